#ifndef LEXENT_LEXENT_HPP
#define LEXENT_LEXENT_HPP

#include "lexent/balapinc.hpp"
#include "lexent/datasets/jmth.hpp"
#include "lexent/datasets/pairs.hpp"
#include "lexent/datasets/split.hpp"
#include "lexent/datasets/taxonomy.hpp"
#include "lexent/error.hpp"
#include "lexent/eval/cross_validation.hpp"
#include "lexent/eval/folds.hpp"
#include "lexent/eval/metrics.hpp"
#include "lexent/eval/ranking.hpp"
#include "lexent/eval/report.hpp"
#include "lexent/eval/stats.hpp"
#include "lexent/eval/tuning.hpp"
#include "lexent/experiment/scorers.hpp"
#include "lexent/experiment/spaces.hpp"
#include "lexent/features.hpp"
#include "lexent/svm/kernel.hpp"
#include "lexent/svm/model.hpp"
#include "lexent/svm/platt.hpp"
#include "lexent/svm/smo.hpp"
#include "lexent/vsm/cooccurrence.hpp"
#include "lexent/vsm/embedding.hpp"
#include "lexent/vsm/io.hpp"
#include "lexent/vsm/ppmi.hpp"
#include "lexent/vsm/svd.hpp"
#include "lexent/vsm/vocabulary.hpp"

#endif  // LEXENT_LEXENT_HPP
