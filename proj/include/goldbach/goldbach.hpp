// goldbach.hpp
// Umbrella header for the library (the CLI front end is in cli.hpp).

#pragma once
#include "goldbach/error.hpp"
#include "goldbach/estimator.hpp"
#include "goldbach/harness.hpp"
#include "goldbach/pair_counter.hpp"
#include "goldbach/parallel.hpp"
#include "goldbach/prime_engine.hpp"
