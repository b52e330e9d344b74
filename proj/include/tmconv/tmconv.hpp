#pragma once

// Umbrella header for the tmconv library: a simulator for the one-bit
// Tsetlin machine learning game together with the analytic Markov-chain
// machinery (conditional birth-death chains, stationary distributions,
// granularity thresholds) that predicts where the game converges, plus a
// Monte Carlo lab that confronts the two.

#include "automaton.hpp"
#include "chains.hpp"
#include "clause.hpp"
#include "env.hpp"
#include "errors.hpp"
#include "feedback_tables.hpp"
#include "lab.hpp"
#include "markov.hpp"
#include "rng.hpp"
#include "serialize.hpp"
#include "thresholds.hpp"
