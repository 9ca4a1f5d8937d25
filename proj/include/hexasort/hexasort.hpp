#pragma once

#include "engine.hpp"
#include "solvers.hpp"
#include "structural.hpp"
#include "reductions.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "cli.hpp"
