#pragma once

#include "hypolink/elements.hpp"
#include "hypolink/error.hpp"
#include "hypolink/eval.hpp"
#include "hypolink/graph.hpp"
#include "hypolink/io.hpp"
#include "hypolink/keywords.hpp"
#include "hypolink/matter.hpp"
#include "hypolink/mf.hpp"
#include "hypolink/pipeline.hpp"
#include "hypolink/predict.hpp"
#include "hypolink/record.hpp"
#include "hypolink/rng.hpp"
#include "hypolink/stemmer.hpp"
#include "hypolink/synth.hpp"
