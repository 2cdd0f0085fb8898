#pragma once

// Thompson's group F: piecewise linear homeomorphisms of [0,1] with dyadic
// breakpoints and slopes 2^z.  All arithmetic is exact; nothing in this
// header touches floating point.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lawless {

/// numerator / 2^exponent, normalized so that the numerator is odd whenever
/// the exponent is positive, and zero is 0/2^0.
class Dyadic {
 public:
  using Int = boost::multiprecision::cpp_int;

  Dyadic() = default;
  Dyadic(Int numerator, std::uint64_t exponent) : num_(std::move(numerator)), exp_(exponent) {
    normalize();
  }
  Dyadic(long long value) : num_(value), exp_(0) {}  // NOLINT: integers are dyadic

  const Int& numerator() const noexcept { return num_; }
  std::uint64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return num_.sign(); }

  /// value * 2^shift.
  Dyadic scaled(std::int64_t shift) const {
    if (shift >= 0) {
      const auto s = static_cast<std::uint64_t>(shift);
      if (s <= exp_) return Dyadic(num_, exp_ - s);
      return Dyadic(Int(num_ << static_cast<unsigned>(s - exp_)), 0);
    }
    return Dyadic(num_, exp_ + static_cast<std::uint64_t>(-shift));
  }

  /// Writes a nonzero value as odd * 2^power and returns power.
  std::int64_t two_adic_valuation() const {
    if (num_ == 0) throw RangeError("zero has no 2-adic valuation");
    const auto tz = static_cast<std::int64_t>(boost::multiprecision::lsb(abs(num_)));
    return tz - static_cast<std::int64_t>(exp_);
  }

  /// The odd part of a nonzero value (sign included).
  Int odd_part() const {
    Int a = num_;
    while (a != 0 && (a & 1) == 0) a >>= 1;
    return a;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const auto e = std::max(a.exp_, b.exp_);
    return Dyadic(Int(a.num_ << static_cast<unsigned>(e - a.exp_)) +
                      Int(b.num_ << static_cast<unsigned>(e - b.exp_)),
                  e);
  }
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(Int(-a.num_), a.exp_); }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(Int(a.num_ * b.num_), a.exp_ + b.exp_);
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const auto e = std::max(a.exp_, b.exp_);
    const Int l = a.num_ << static_cast<unsigned>(e - a.exp_);
    const Int r = b.num_ << static_cast<unsigned>(e - b.exp_);
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
  }

  Int num_ = 0;
  std::uint64_t exp_ = 0;
};

/// "p/2^e", e.g. "3/2^3" for 3/8.
inline std::string to_string(const Dyadic& d) {
  return d.numerator().str() + "/2^" + std::to_string(d.exponent());
}

/// Accepts "p/2^e", "p/q" with q a power of two, or an integer "p".
inline Dyadic parse_dyadic(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  const std::string_view full = text;
  text = trim(text);
  auto parse_int = [&](std::string_view digits, bool allow_sign) -> Dyadic::Int {
    std::size_t start = static_cast<std::size_t>(digits.data() - full.data());
    Dyadic::Int value = 0;
    bool negative = false;
    std::size_t i = 0;
    if (allow_sign && i < digits.size() && (digits[i] == '-' || digits[i] == '+')) {
      negative = digits[i] == '-';
      ++i;
    }
    if (i >= digits.size()) throw ParseError("expected digits", start + i + 1);
    for (; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
        throw ParseError("unexpected character in dyadic number", start + i + 1);
      }
      value = value * 10 + (digits[i] - '0');
    }
    return negative ? Dyadic::Int(-value) : value;
  };

  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_int(text, true), 0);
  const Dyadic::Int num = parse_int(trim(text.substr(0, slash)), true);
  std::string_view den = trim(text.substr(slash + 1));
  if (den.size() > 2 && den[0] == '2' && den[1] == '^') {
    const Dyadic::Int e = parse_int(den.substr(2), false);
    if (e > 1'000'000) throw ParseError("exponent too large", slash + 1);
    return Dyadic(num, static_cast<std::uint64_t>(e));
  }
  const Dyadic::Int q = parse_int(den, false);
  if (q == 0 || (q & (q - 1)) != 0) {
    throw ParseError("denominator is not a power of two", static_cast<std::size_t>(den.data() - full.data()) + 1);
  }
  return Dyadic(num, boost::multiprecision::lsb(q));
}

struct Breakpoint {
  Dyadic in;
  Dyadic out;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// An element of F, stored as its minimal breakpoint list.
class PLMap {
 public:
  PLMap() : PLMap(identity()) {}

  /// Validates and canonicalizes (collinear interior breakpoints dropped).
  static PLMap make(std::vector<Breakpoint> points) {
    if (points.size() < 2 || points.front() != Breakpoint{0, 0} ||
        points.back() != Breakpoint{1, 1}) {
      throw EndpointError("a map in F must start at (0,0) and end at (1,1)");
    }
    std::vector<std::int64_t> slopes;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      const Dyadic dx = points[i + 1].in - points[i].in;
      const Dyadic dy = points[i + 1].out - points[i].out;
      if (dx.sign() <= 0 || dy.sign() <= 0) {
        throw MonotonicityError("breakpoints must increase strictly in both coordinates");
      }
      if (dx.odd_part() != dy.odd_part()) {
        throw SlopeError("segment " + std::to_string(i) + " has a slope that is not a power of 2");
      }
      slopes.push_back(dy.two_adic_valuation() - dx.two_adic_valuation());
    }
    PLMap f(Tag{});
    f.points_.push_back(points.front());
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      if (i + 1 < slopes.size() && slopes[i] == slopes[i + 1]) continue;
      f.points_.push_back(points[i + 1]);
      f.slopes_.push_back(slopes[i]);
    }
    return f;
  }

  static PLMap identity() {
    PLMap f(Tag{});
    f.points_ = {{0, 0}, {1, 1}};
    f.slopes_ = {0};
    return f;
  }

  std::span<const Breakpoint> breakpoints() const noexcept { return points_; }
  /// Segment i has slope 2^slope_exponents()[i].
  std::span<const std::int64_t> slope_exponents() const noexcept { return slopes_; }
  bool is_identity() const noexcept { return points_.size() == 2; }

  friend bool operator==(const PLMap& a, const PLMap& b) { return a.points_ == b.points_; }

 private:
  struct Tag {};
  explicit PLMap(Tag) {}

  std::vector<Breakpoint> points_;
  std::vector<std::int64_t> slopes_;
};

inline Dyadic eval(const PLMap& f, const Dyadic& t) {
  if (t < Dyadic(0) || t > Dyadic(1)) throw RangeError("point " + to_string(t) + " outside [0,1]");
  const auto pts = f.breakpoints();
  // Last breakpoint with input <= t.
  auto it = std::upper_bound(pts.begin(), pts.end(), t,
                             [](const Dyadic& v, const Breakpoint& b) { return v < b.in; });
  const std::size_t i = static_cast<std::size_t>(it - pts.begin()) - 1;
  if (i + 1 == pts.size()) return pts.back().out;
  return pts[i].out + (t - pts[i].in).scaled(f.slope_exponents()[i]);
}

inline PLMap inverse(const PLMap& f) {
  std::vector<Breakpoint> swapped;
  for (const auto& b : f.breakpoints()) swapped.push_back({b.out, b.in});
  return PLMap::make(std::move(swapped));
}

/// t -> g(f(t)).
inline PLMap compose(const PLMap& f, const PLMap& g) {
  const PLMap finv = inverse(f);
  std::vector<Dyadic> inputs;
  for (const auto& b : f.breakpoints()) inputs.push_back(b.in);
  for (const auto& b : g.breakpoints()) inputs.push_back(eval(finv, b.in));
  std::sort(inputs.begin(), inputs.end());
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  std::vector<Breakpoint> pts;
  pts.reserve(inputs.size());
  for (const auto& t : inputs) pts.push_back({t, eval(g, eval(f, t))});
  return PLMap::make(std::move(pts));
}

/// f^n for any integer n.
inline PLMap power(const PLMap& f, std::int64_t n) {
  const PLMap base = n < 0 ? inverse(f) : f;
  PLMap out = PLMap::identity();
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) out = compose(out, base);
  return out;
}

/// x_0 = [(0,0),(1/2,1/4),(3/4,1/2),(1,1)] and x_1, which is the identity on
/// [0,1/2] and a copy of x_0 rescaled into [1/2,1].
inline std::pair<PLMap, PLMap> standard_generators() {
  const Dyadic half(1, 1), quarter(1, 2), three_quarters(3, 2);
  PLMap x0 = PLMap::make({{0, 0}, {half, quarter}, {three_quarters, half}, {1, 1}});
  PLMap x1 = PLMap::make({{0, 0},
                          {half, half},
                          {three_quarters, Dyadic(5, 3)},
                          {Dyadic(7, 3), three_quarters},
                          {1, 1}});
  return {std::move(x0), std::move(x1)};
}

/// The conjugate of f by the affine map [0,1] -> [lo,hi]: identity outside
/// [lo,hi], and a scaled copy of f inside.  Slopes are unchanged, so the
/// result is again in F.
inline PLMap rescale(const PLMap& f, const Dyadic& lo, const Dyadic& hi) {
  if (!(Dyadic(0) <= lo && lo < hi && hi <= Dyadic(1))) {
    throw RangeError("rescale needs 0 <= lo < hi <= 1");
  }
  const Dyadic width = hi - lo;
  std::vector<Breakpoint> pts{{0, 0}};
  for (const auto& b : f.breakpoints()) {
    Breakpoint mapped{lo + width * b.in, lo + width * b.out};
    if (mapped != pts.back()) pts.push_back(std::move(mapped));
  }
  if (pts.back() != Breakpoint{1, 1}) pts.push_back({1, 1});
  return PLMap::make(std::move(pts));
}

/// The smallest closed interval outside which f is the identity, or nullopt
/// for the identity map.
inline std::optional<std::pair<Dyadic, Dyadic>> support_bounds(const PLMap& f) {
  if (f.is_identity()) return std::nullopt;
  const auto pts = f.breakpoints();
  const auto slopes = f.slope_exponents();
  std::size_t first = 0;
  while (slopes[first] == 0) ++first;
  std::size_t last = slopes.size() - 1;
  while (slopes[last] == 0) --last;
  return std::make_pair(pts[first].in, pts[last + 1].in);
}

struct IntervalMove {
  PLMap map;
  std::int64_t power = 0;  // which power of x_0 was rescaled
};

/// A map supported in [d1,d2] that moves x to a point outside `forbidden`.
/// Tries rescaled powers x_0^n for n = 1, -1, 2, -2, ... up to |n| = cap.
inline IntervalMove interval_mover(const Dyadic& d1, const Dyadic& d2, const Dyadic& x,
                                   std::span<const Dyadic> forbidden, std::int64_t cap = 64) {
  if (!(Dyadic(0) < d1 && d1 < x && x < d2 && d2 < Dyadic(1))) {
    throw RangeError("interval mover needs 0 < d1 < x < d2 < 1");
  }
  const PLMap x0 = standard_generators().first;
  const PLMap x0inv = inverse(x0);
  PLMap up = PLMap::identity();
  PLMap down = PLMap::identity();
  for (std::int64_t n = 1; n <= cap; ++n) {
    up = compose(up, x0);
    down = compose(down, x0inv);
    for (const auto& [candidate, signed_n] : {std::pair<const PLMap&, std::int64_t>{up, n},
                                              std::pair<const PLMap&, std::int64_t>{down, -n}}) {
      PLMap h = rescale(candidate, d1, d2);
      const Dyadic image = eval(h, x);
      if (image == x) continue;
      if (std::find(forbidden.begin(), forbidden.end(), image) != forbidden.end()) continue;
      return {std::move(h), signed_n};
    }
  }
  throw CapError("no power of x_0 up to " + std::to_string(cap) + " moves the point admissibly");
}

}  // namespace lawless
