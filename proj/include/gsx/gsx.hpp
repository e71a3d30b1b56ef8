#pragma once

// Umbrella header: energy-preserving graph shift operators, graph Fourier
// analysis, LSI graph filters, graph correlation functions and optimal
// (Wiener) graph filtering, plus generators, file I/O and the experiment
// runners behind the gsx CLI.

#include "gsx/types.hpp"
#include "gsx/errors.hpp"
#include "gsx/rng.hpp"
#include "gsx/graph.hpp"
#include "gsx/decomposition.hpp"
#include "gsx/polynomials.hpp"
#include "gsx/signal.hpp"
#include "gsx/fourier.hpp"
#include "gsx/shift.hpp"
#include "gsx/filters.hpp"
#include "gsx/correlation.hpp"
#include "gsx/wiener.hpp"
#include "gsx/generators.hpp"
#include "gsx/io.hpp"
#include "gsx/experiments.hpp"
