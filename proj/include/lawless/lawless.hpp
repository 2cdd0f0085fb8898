#pragma once

// Everything in one include.

#include "errors.hpp"
#include "random.hpp"
#include "words.hpp"
#include "perm.hpp"
#include "trees.hpp"
#include "thompson.hpp"
#include "separation.hpp"
#include "actions.hpp"
#include "montecarlo.hpp"
#include "json_io.hpp"
