// lexent: command-line driver for building spaces, datasets and running evaluations.
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lexent/lexent.hpp"

namespace fs = std::filesystem;
using namespace lexent;
using namespace lexent::io;

namespace {

struct Global {
  std::string out_dir = "runs";
  std::uint64_t seed = 0;
};

struct SvmOptions {
  double C = 1.0;
  int degree = 2;
  double gamma = 0.01;
};

struct IngestOptions {
  std::string corpus, vocab;
  std::size_t window = kDefaultWindow;
  std::string policy = "general";
};

struct PpmiOptions {
  std::string counts;
};

struct SvdOptionsCli {
  std::string ppmi;
  long k = 0;
  double p = 1.0;
  std::string space = "general";
};

struct JmthOptionsCli {
  std::string rated, taxonomy;
  std::size_t clean_count = 10;
  bool split = false;
};

struct TuneOptions {
  std::string algo, dev1, dev2;
  std::string ppmi, domain_ppmi, function_ppmi;
  std::string reference = std::string(LEXENT_DATA_DIR) + "/basic_english.txt";
  std::vector<std::size_t> max_f_grid = eval::default_max_features_grid();
  std::vector<long> k_grid = eval::default_k_grid();
  std::vector<double> p_grid = eval::default_p_grid();
  SvmOptions svm;
};

struct EvaluateOptions {
  std::string algo, setup = "standard";
  std::string dataset, train, test;
  std::size_t folds = 10;
  std::string ppmi;
  std::optional<std::size_t> max_f;
  std::optional<double> threshold;
  std::string embedding, domain_embedding, function_embedding;
  std::string reference = std::string(LEXENT_DATA_DIR) + "/basic_english.txt";
  SvmOptions svm;
};

// Usage or configuration problems detected after parsing.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path make_run_dir(const Global& g) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  const std::string base = std::string(stamp) + "-seed" + std::to_string(g.seed);
  fs::path dir = fs::path(g.out_dir) / base;
  for (int n = 2; fs::exists(dir); ++n) dir = fs::path(g.out_dir) / (base + "-" + std::to_string(n));
  fs::create_directories(dir);
  return dir;
}

// Config echo in the same INI layout --config reads, plus input checksums.
void write_manifest(const fs::path& dir, const CLI::App& app, const CLI::App& sub, const Global& g,
                    const std::vector<std::string>& inputs) {
  std::string text = "; lexent run manifest\n";
  text += "; rerun with: lexent --config " + (dir / "manifest.ini").string() + " " + sub.get_name() + "\n";
  text += "; seed=" + std::to_string(g.seed) + "\n";
  for (const auto& in : inputs) {
    if (in.empty()) continue;
    text += "; input " + in + " fnv1a64=" + util::checksum_hex(in) + "\n";
  }
  // Only the invoked subcommand's section; unset options stay unset on rerun.
  std::istringstream all(app.config_to_str(true, false));
  std::string line;
  while (std::getline(all, line)) {
    if (line.ends_with("=\"\"")) continue;
    const auto eq = line.find('=');
    const auto dot = line.find('.');
    if (dot != std::string::npos && dot < eq && line.substr(0, dot) != sub.get_name()) continue;
    text += line + "\n";
  }
  util::write_file_atomic(dir / "manifest.ini", text);
}

svm::Kernel kernel_for(FeatureScheme s, const SvmOptions& o) {
  return s == FeatureScheme::convecs ? svm::Kernel::polynomial(o.degree) : svm::Kernel::rbf(o.gamma);
}

svm::TrainConfig train_config(const SvmOptions& o, std::uint64_t seed) {
  svm::TrainConfig c;
  c.C = o.C;
  c.seed = seed;
  return c;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void run_ingest(const IngestOptions& o, const fs::path& dir) {
  const auto vocab = load_vocabulary(o.vocab);
  auto in = util::open_input(o.corpus);
  CountingReport rep;
  const auto counts = count_cooccurrences(in, vocab, o.window, parse_context_policy(o.policy), &rep);
  save_matrix(counts, dir / "counts.tsv");
  std::string r = "sentences=" + std::to_string(rep.sentences) + "\ntokens=" + std::to_string(rep.tokens) +
                  "\ntarget_occurrences=" + std::to_string(rep.target_occurrences) +
                  "\noov_tokens=" + std::to_string(rep.oov_tokens) +
                  "\nfiltered_contexts=" + std::to_string(rep.filtered_contexts) + "\nrows=" +
                  std::to_string(counts.rows()) + "\ncols=" + std::to_string(counts.cols()) + "\n";
  util::write_file_atomic(dir / "ingest_report.txt", r);
  std::cout << r;
}

void run_ppmi(const PpmiOptions& o, const fs::path& dir) {
  const auto m = ppmi(load_matrix<std::uint64_t>(o.counts));
  save_matrix(m, dir / "ppmi.tsv");
  std::cout << "rows=" << m.rows() << " cols=" << m.cols() << " nonzeros=" << m.nnz() << "\n";
}

void run_svd(const SvdOptionsCli& o, const Global& g, const fs::path& dir) {
  require(o.k >= 1, "--k must be at least 1");
  const auto space = experiment::build_space(load_matrix<double>(o.ppmi), o.k, g.seed, parse_space_kind(o.space));
  save_embedding(experiment::embed(space, o.k, o.p), dir / "embedding.tsv");
  std::string sv = "singular_values=";
  for (Eigen::Index i = 0; i < space.factors.k(); ++i) sv += (i ? "," : "") + util::format_double(space.factors.sigma(i));
  util::write_file_atomic(dir / "svd_report.txt", "k=" + std::to_string(o.k) + "\np=" + util::format_double(o.p) +
                                                      "\nseed=" + std::to_string(g.seed) + "\n" + sv + "\n");
}

void run_jmth(const JmthOptionsCli& o, const Global& g, const fs::path& dir) {
  const auto tax = o.taxonomy.empty() ? RelationTaxonomy::builtin() : load_taxonomy(o.taxonomy);
  const auto res = jmth_transform(load_rated_pairs(o.rated), tax, {o.clean_count, g.seed});
  save_pairs(res.pairs, dir / "jmth.tsv");
  std::string rep = format_jmth_report(res.report) + "seed=" + std::to_string(g.seed) + "\n";
  if (o.split) {
    const auto s = split_dev_test(res.pairs, g.seed);
    save_pairs(s.dev1, dir / "dev1.tsv");
    save_pairs(s.dev2, dir / "dev2.tsv");
    save_pairs(s.test, dir / "test.tsv");
    rep += "dev1=" + std::to_string(s.dev1.size()) + "\ndev2=" + std::to_string(s.dev2.size()) +
           "\ntest=" + std::to_string(s.test.size()) + "\ndropped_excess=" + std::to_string(s.dropped_excess) + "\n";
  }
  util::write_file_atomic(dir / "jmth_report.txt", rep);
  std::cout << rep;
}

Dataset covered_by(const Dataset& d, const std::vector<const Embedding*>& spaces, std::string_view what) {
  return experiment::keep_covered(d, [&](const std::string& t) {
    for (const auto* e : spaces)
      if (!e->contains(t)) return false;
    return true;
  }, what);
}

Dataset covered_by(const Dataset& d, const PpmiMatrix& m) {
  return experiment::keep_covered(d, [&](const std::string& t) { return m.row_terms().contains(t); }, "the PPMI matrix");
}

void run_tune(const TuneOptions& o, const Global& g, const fs::path& dir) {
  const auto dev1_all = load_pairs(o.dev1);
  const auto dev2_all = load_pairs(o.dev2);
  std::string params = "algo=" + o.algo + "\nseed=" + std::to_string(g.seed) + "\n";
  std::string grid = "";
  if (o.algo == "balapinc") {
    require(!o.ppmi.empty(), "balapinc tuning needs --ppmi");
    const auto m = load_matrix<double>(o.ppmi);
    const auto dev1 = covered_by(dev1_all, m), dev2 = covered_by(dev2_all, m);
    const eval::BalapincScoring score = [&](std::span<const LabeledPair> pairs, std::optional<std::size_t> mf) {
      return experiment::BalapincScorer(m, mf, 0.5).scores(pairs);
    };
    const auto t = eval::tune_balapinc(dev1, dev2, score, o.max_f_grid);
    params += "max_f=" + std::to_string(*t.params.max_features) + "\nthreshold=" + util::format_double(t.params.threshold) + "\n";
    grid = "max_f\tdev2_f\n";
    for (std::size_t i = 0; i < o.max_f_grid.size(); ++i)
      grid += std::to_string(o.max_f_grid[i]) + '\t' + util::format_double(t.dev2_f[i]) + '\n';
  } else {
    const auto scheme = parse_feature_scheme(o.algo);
    const long k_max = *std::max_element(o.k_grid.begin(), o.k_grid.end());
    std::vector<experiment::Space> spaces;
    ReferenceSet reference;
    if (scheme == FeatureScheme::convecs) {
      require(!o.ppmi.empty(), "convecs tuning needs --ppmi");
      spaces.push_back(experiment::build_space(load_matrix<double>(o.ppmi), k_max, g.seed));
    } else {
      require(!o.domain_ppmi.empty() && !o.function_ppmi.empty(), "simdiffs tuning needs --domain-ppmi and --function-ppmi");
      spaces.push_back(experiment::build_space(load_matrix<double>(o.domain_ppmi), k_max, g.seed, SpaceKind::domain));
      spaces.push_back(experiment::build_space(load_matrix<double>(o.function_ppmi), k_max, g.seed, SpaceKind::function));
      reference = load_reference_set(o.reference);
    }
    const auto kernel = kernel_for(scheme, o.svm);
    const auto cfg = train_config(o.svm, g.seed);
    bool warned = false;
    const auto t = eval::tune_svd_grid([&](long k, double p) {
      std::vector<Embedding> embs;
      for (const auto& s : spaces) embs.push_back(experiment::embed(s, k, p));
      std::vector<const Embedding*> ptrs;
      for (const auto& e : embs) ptrs.push_back(&e);
      // Coverage does not depend on (k, p); warn once.
      auto silence = set_warning_sink(warned ? WarningSink([](const std::string&) {}) : warning_sink());
      const auto dev1 = covered_by(dev1_all, ptrs, "the embeddings");
      const auto dev2 = covered_by(dev2_all, ptrs, "the embeddings");
      ReferenceSet ref = scheme == FeatureScheme::simdiffs ? reference.restricted_to({ptrs[0], ptrs[1]}) : ReferenceSet{};
      set_warning_sink(silence);
      warned = true;
      FeatureResources res;
      if (scheme == FeatureScheme::convecs) res.general = ptrs[0];
      else res = {nullptr, ptrs[0], ptrs[1], &ref};
      experiment::SvmScorer scorer(scheme, res, kernel, cfg);
      scorer.fit(dev1);
      std::vector<int> pred;
      for (const auto& p2 : scorer.predict(dev2)) pred.push_back(p2.label);
      return eval::weighted_f(labels_of(dev2), pred);
    }, o.k_grid, o.p_grid);
    params += "k=" + std::to_string(t.k) + "\np=" + util::format_double(t.p) + "\nf=" + util::format_double(t.f) + "\n";
    grid = "k\tp\tdev2_f\n";
    for (const auto& pt : t.grid) grid += std::to_string(pt.k) + '\t' + util::format_double(pt.p) + '\t' + util::format_double(pt.f) + '\n';
  }
  util::write_file_atomic(dir / "params.txt", params);
  util::write_file_atomic(dir / "grid.tsv", grid);
  std::cout << params;
}

void run_evaluate(const EvaluateOptions& o, const Global& g, const fs::path& dir) {
  const auto setup = eval::parse_setup(o.setup);
  const bool different = setup == eval::Setup::different;
  if (different) require(!o.train.empty() && !o.test.empty(), "the different setup needs --train and --test");
  else require(!o.dataset.empty(), "cross-validation setups need --dataset");

  Dataset data, train, test;
  if (different) train = load_pairs(o.train), test = load_pairs(o.test);
  else data = load_pairs(o.dataset);

  std::optional<PpmiMatrix> matrix;
  std::vector<Embedding> embs;
  ReferenceSet reference;
  eval::ScorerFactory factory;
  auto cover = [&](const Dataset& d) {
    if (matrix) return covered_by(d, *matrix);
    std::vector<const Embedding*> ptrs;
    for (const auto& e : embs) ptrs.push_back(&e);
    return covered_by(d, ptrs, "the embeddings");
  };

  if (o.algo == "balapinc") {
    require(!o.ppmi.empty(), "balapinc needs --ppmi");
    matrix = load_matrix<double>(o.ppmi);
    factory = [&] { return std::make_unique<experiment::BalapincScorer>(*matrix, o.max_f, o.threshold); };
  } else {
    const auto scheme = parse_feature_scheme(o.algo);
    if (scheme == FeatureScheme::convecs) {
      require(!o.embedding.empty(), "convecs needs --embedding");
      embs.push_back(load_embedding(o.embedding));
    } else {
      require(!o.domain_embedding.empty() && !o.function_embedding.empty(),
              "simdiffs needs --domain-embedding and --function-embedding");
      embs.push_back(load_embedding(o.domain_embedding));
      embs.push_back(load_embedding(o.function_embedding));
      reference = load_reference_set(o.reference).restricted_to({&embs[0], &embs[1]});
    }
    FeatureResources res;
    if (scheme == FeatureScheme::convecs) res.general = &embs[0];
    else res = {nullptr, &embs[0], &embs[1], &reference};
    const auto kernel = kernel_for(scheme, o.svm);
    const auto cfg = train_config(o.svm, g.seed);
    factory = [=] { return std::make_unique<experiment::SvmScorer>(scheme, res, kernel, cfg); };
  }

  eval::EvaluationResult result;
  Dataset tested;
  std::vector<int> fold_of;
  if (different) {
    train = cover(train);
    tested = cover(test);
    result = eval::evaluate_different(train, tested, factory);
    fold_of.assign(tested.size(), 0);
  } else {
    tested = cover(data);
    const auto plan = eval::make_folds(tested, setup, o.folds, g.seed);
    result = eval::cross_validate(tested, factory, plan);
    fold_of.assign(tested.size(), -1);
    for (std::size_t f = 0; f < plan.folds.size(); ++f)
      for (auto i : plan.folds[f]) fold_of[i] = static_cast<int>(f);
  }

  std::string preds = "a\tb\tlabel\tfold\tscore\tpredicted\n";
  for (std::size_t i = 0; i < tested.size(); ++i) {
    const auto& p = result.predictions[i];
    preds += tested[i].a + '\t' + tested[i].b + '\t' + std::to_string(tested[i].label) + '\t' + std::to_string(fold_of[i]) +
             '\t' + (p ? util::format_double(p->score) + '\t' + std::to_string(p->label) : std::string("na\tna")) + '\n';
  }
  util::write_file_atomic(dir / "predictions.tsv", preds);

  const std::string values = eval::format_report_values(result.report) + "algo=" + o.algo + "\nsetup=" + o.setup +
                             "\nseed=" + std::to_string(g.seed) + "\npairs=" + std::to_string(tested.size()) + "\n";
  util::write_file_atomic(dir / "report.txt", values);
  const std::string table = eval::format_report_table(result.report);
  util::write_file_atomic(dir / "report_table.txt", table);
  std::cout << table;
}

void add_svm_options(CLI::App* sub, SvmOptions& s) {
  sub->add_option("--C", s.C, "SVM cost parameter")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--degree", s.degree, "polynomial kernel degree (convecs)")->capture_default_str()->check(CLI::Range(1, 10));
  sub->add_option("--gamma", s.gamma, "RBF kernel width (simdiffs)")->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical entailment with balAPinc, ConVecs and SimDiffs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "read options from an INI file (flags given on the command line win)");
  Global g;
  app.add_option("--out-dir", g.out_dir, "directory that receives the run directory")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every randomized step")->capture_default_str();

  const std::vector<std::string> algos{"balapinc", "convecs", "simdiffs"};

  IngestOptions ing;
  auto* c_ing = app.add_subcommand("ingest", "count windowed co-occurrences in a tagged corpus");
  c_ing->add_option("--corpus", ing.corpus, "one sentence per line, word_TAG tokens")->required()->check(CLI::ExistingFile);
  c_ing->add_option("--vocab", ing.vocab, "target terms, one per line")->required()->check(CLI::ExistingFile);
  c_ing->add_option("--window", ing.window, "context window on each side")->capture_default_str()->check(CLI::PositiveNumber);
  c_ing->add_option("--policy", ing.policy, "general, domain (noun contexts) or function (verb contexts)")
      ->capture_default_str()->check(CLI::IsMember({"general", "domain", "function"}));

  PpmiOptions pp;
  auto* c_ppmi = app.add_subcommand("ppmi", "weight a count matrix by positive PMI");
  c_ppmi->add_option("--counts", pp.counts, "count matrix from ingest")->required()->check(CLI::ExistingFile);

  SvdOptionsCli sv;
  auto* c_svd = app.add_subcommand("svd", "project a PPMI matrix to U_k diag(sigma)^p");
  c_svd->add_option("--ppmi", sv.ppmi, "PPMI matrix")->required()->check(CLI::ExistingFile);
  c_svd->add_option("--k", sv.k, "retained factors")->required();
  c_svd->add_option("--p", sv.p, "exponent on the singular values")->capture_default_str();
  c_svd->add_option("--space", sv.space, "general, domain or function")
      ->capture_default_str()->check(CLI::IsMember({"general", "domain", "function"}));

  JmthOptionsCli jm;
  auto* c_jm = app.add_subcommand("transform-jmth", "turn rated relation pairs into a balanced entailment dataset");
  c_jm->add_option("--rated", jm.rated, "a, b, subcategory id, rating")->required()->check(CLI::ExistingFile);
  c_jm->add_option("--taxonomy", jm.taxonomy, "relation taxonomy TSV (built-in table when omitted)")->check(CLI::ExistingFile);
  c_jm->add_option("--clean-count", jm.clean_count, "lowest-rated pairs removed per subcategory")->capture_default_str();
  c_jm->add_flag("--split", jm.split, "also write Dev1/Dev2/Test");

  TuneOptions tu;
  auto* c_tune = app.add_subcommand("tune", "select parameters on Dev1/Dev2");
  c_tune->add_option("--algo", tu.algo)->required()->check(CLI::IsMember(algos));
  c_tune->add_option("--dev1", tu.dev1)->required()->check(CLI::ExistingFile);
  c_tune->add_option("--dev2", tu.dev2)->required()->check(CLI::ExistingFile);
  c_tune->add_option("--ppmi", tu.ppmi, "PPMI matrix (balapinc, convecs)")->check(CLI::ExistingFile);
  c_tune->add_option("--domain-ppmi", tu.domain_ppmi)->check(CLI::ExistingFile);
  c_tune->add_option("--function-ppmi", tu.function_ppmi)->check(CLI::ExistingFile);
  c_tune->add_option("--reference", tu.reference, "reference words (simdiffs)")->capture_default_str()->check(CLI::ExistingFile);
  c_tune->add_option("--max-f-grid", tu.max_f_grid)->capture_default_str()->delimiter(',');
  c_tune->add_option("--k-grid", tu.k_grid)->capture_default_str()->delimiter(',');
  c_tune->add_option("--p-grid", tu.p_grid)->capture_default_str()->delimiter(',');
  add_svm_options(c_tune, tu.svm);

  EvaluateOptions ev;
  auto* c_ev = app.add_subcommand("evaluate", "cross-validate or train/test one algorithm");
  c_ev->add_option("--algo", ev.algo)->required()->check(CLI::IsMember(algos));
  c_ev->add_option("--setup", ev.setup)->capture_default_str()->check(CLI::IsMember({"standard", "clustered", "balanced", "different"}));
  c_ev->add_option("--dataset", ev.dataset, "labeled pairs (cross-validation setups)")->check(CLI::ExistingFile);
  c_ev->add_option("--train", ev.train, "training pairs (different setup)")->check(CLI::ExistingFile);
  c_ev->add_option("--test", ev.test, "test pairs (different setup)")->check(CLI::ExistingFile);
  c_ev->add_option("--folds", ev.folds)->capture_default_str();
  c_ev->add_option("--ppmi", ev.ppmi, "PPMI matrix (balapinc)")->check(CLI::ExistingFile);
  c_ev->add_option("--max-f", ev.max_f, "features kept per word (balapinc)");
  c_ev->add_option("--threshold", ev.threshold, "fixed T; tuned on each training split when omitted");
  c_ev->add_option("--embedding", ev.embedding, "general embedding (convecs)")->check(CLI::ExistingFile);
  c_ev->add_option("--domain-embedding", ev.domain_embedding)->check(CLI::ExistingFile);
  c_ev->add_option("--function-embedding", ev.function_embedding)->check(CLI::ExistingFile);
  c_ev->add_option("--reference", ev.reference, "reference words (simdiffs)")->capture_default_str()->check(CLI::ExistingFile);
  add_svm_options(c_ev, ev.svm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    std::vector<std::string> inputs;
    for (const auto* opt : sub->get_options()) {
      if (opt->count() == 0 && opt->get_name() != "--reference") continue;
      for (const auto& r : opt->results())
        if (fs::is_regular_file(r)) inputs.push_back(r);
    }
    if (sub == c_tune && !tu.reference.empty() && tu.algo == "simdiffs") inputs.push_back(tu.reference);
    if (sub == c_ev && !ev.reference.empty() && ev.algo == "simdiffs") inputs.push_back(ev.reference);
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());

    const fs::path dir = make_run_dir(g);
    write_manifest(dir, app, *sub, g, inputs);
    if (sub == c_ing) run_ingest(ing, dir);
    else if (sub == c_ppmi) run_ppmi(pp, dir);
    else if (sub == c_svd) run_svd(sv, g, dir);
    else if (sub == c_jm) run_jmth(jm, g, dir);
    else if (sub == c_tune) run_tune(tu, g, dir);
    else run_evaluate(ev, g, dir);
    std::cout << "run_dir=" << dir.string() << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const TrainingError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
