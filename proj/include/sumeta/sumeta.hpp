#pragma once

// Meta-evaluation harness for summarization metrics: lexical metric
// scoring, crowdsourced SCU judgment aggregation, and system/summary
// level agreement analysis between metrics and human scores.

#include "sumeta/annotations.hpp"
#include "sumeta/corpus.hpp"
#include "sumeta/error.hpp"
#include "sumeta/format.hpp"
#include "sumeta/metaeval.hpp"
#include "sumeta/metrics.hpp"
#include "sumeta/reports.hpp"
#include "sumeta/rng.hpp"
#include "sumeta/sampling.hpp"
#include "sumeta/score_table.hpp"
#include "sumeta/stats.hpp"
#include "sumeta/text.hpp"
