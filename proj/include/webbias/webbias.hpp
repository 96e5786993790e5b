#pragma once

#include "webbias/bias.hpp"
#include "webbias/click.hpp"
#include "webbias/domains.hpp"
#include "webbias/errors.hpp"
#include "webbias/graph.hpp"
#include "webbias/io.hpp"
#include "webbias/null_model.hpp"
#include "webbias/pagerank.hpp"
#include "webbias/rng.hpp"
#include "webbias/sampling.hpp"
#include "webbias/scaling.hpp"
#include "webbias/synth.hpp"
#include "webbias/ternary.hpp"
