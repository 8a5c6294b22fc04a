#pragma once

#include "ontoverse/error.hpp"
#include "ontoverse/logic.hpp"
#include "ontoverse/propositions.hpp"
#include "ontoverse/theory.hpp"
#include "ontoverse/worldviews.hpp"
#include "ontoverse/version_graph.hpp"
#include "ontoverse/formats.hpp"
