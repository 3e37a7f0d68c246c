#pragma once

#include "calculus.hpp"
#include "coding.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "fixpoint.hpp"
#include "generators.hpp"
#include "iterate.hpp"
#include "json_io.hpp"
#include "models.hpp"
#include "natural.hpp"
#include "omegaproof.hpp"
#include "ordinal.hpp"
#include "synth.hpp"
#include "syntax.hpp"
#include "text.hpp"
