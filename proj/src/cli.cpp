#include "titlegen/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "number_format.hpp"
#include "titlegen/data.hpp"
#include "titlegen/decode.hpp"
#include "titlegen/experiment.hpp"
#include "titlegen/lm.hpp"
#include "titlegen/metrics.hpp"
#include "titlegen/rank.hpp"
#include "titlegen/records.hpp"
#include "titlegen/retrieve.hpp"

namespace titlegen::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSeedEnv = "TITLEGEN_SEED";

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void require_file(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw Error("input file not found: " + path.string());
}

std::vector<Example> read_examples(const std::vector<std::string>& paths) {
  std::vector<Example> out;
  for (const auto& p : paths) {
    require_file(p);
    auto part = read_records<Example>(p);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<std::size_t> parse_k_sweep(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    out.push_back(detail::parse_int<std::size_t>(item));
  }
  validate_k_sweep(out);
  return out;
}

// ---------------------------------------------------------------- prepare

struct PrepareArgs {
  std::string input;
  std::string output_dir;
  std::uint64_t seed = 0;
  std::size_t count = 5000;
  double fraction = 0.1;
  std::vector<std::string> overrides;
};

SplitCounts parse_override(const std::string& text, std::string& language) {
  // language=VALIDATION:TEST
  const auto eq = text.find('=');
  const auto colon = text.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos) {
    throw Error("override must look like language=VALIDATION:TEST, got '" + text + "'");
  }
  language = text.substr(0, eq);
  return {detail::parse_int<std::size_t>(text.substr(eq + 1, colon - eq - 1)),
          detail::parse_int<std::size_t>(text.substr(colon + 1))};
}

int cmd_prepare(const PrepareArgs& args, std::ostream& out, std::ostream& err) {
  require_file(args.input);
  std::ifstream in(args.input, std::ios::binary);
  if (!in) throw Error("cannot read " + args.input);

  FilterStats stats;
  const std::vector<Post> kept = filter_posts(in, stats);
  for (const auto& w : stats.warnings) err << "warning: skipped malformed record, " << w << '\n';

  SplitSpec spec;
  spec.default_count = args.count;
  spec.fallback_fraction = args.fraction;
  for (const auto& o : args.overrides) {
    std::string language;
    const SplitCounts counts = parse_override(o, language);
    spec.overrides[language] = counts;
  }
  const auto splits = chronological_split(kept, spec, args.seed);

  std::map<fs::path, std::string> files;
  std::string all_train, all_validation, all_test;
  nlohmann::ordered_json manifest;
  manifest["seed"] = args.seed;
  manifest["filter"] = {{"read", stats.read},
                        {"kept", stats.kept},
                        {"dropped", stats.dropped},
                        {"malformed", stats.malformed}};
  manifest["split"] = {{"default_count", spec.default_count},
                       {"fallback_fraction", spec.fallback_fraction}};
  nlohmann::ordered_json languages = nlohmann::ordered_json::object();
  std::size_t total_train = 0, total_validation = 0, total_test = 0;

  auto lines = [](const std::vector<Post>& posts) {
    std::string s;
    for (const auto& p : posts) s += p.to_json().dump() + "\n";
    return s;
  };
  const fs::path root(args.output_dir);
  for (const auto& [language, split] : splits) {
    const fs::path dir = root / language;
    files[dir / "train.jsonl"] = lines(split.train);
    files[dir / "validation.jsonl"] = lines(split.validation);
    files[dir / "test.jsonl"] = lines(split.test);
    all_train += files[dir / "train.jsonl"];
    all_validation += files[dir / "validation.jsonl"];
    all_test += files[dir / "test.jsonl"];
    languages[language] = {{"train", split.train.size()},
                           {"validation", split.validation.size()},
                           {"test", split.test.size()}};
    total_train += split.train.size();
    total_validation += split.validation.size();
    total_test += split.test.size();
  }
  manifest["languages"] = std::move(languages);
  manifest["total"] = {
      {"train", total_train}, {"validation", total_validation}, {"test", total_test}};
  files[root / "train.jsonl"] = std::move(all_train);
  files[root / "validation.jsonl"] = std::move(all_validation);
  files[root / "test.jsonl"] = std::move(all_test);
  files[root / "manifest.json"] = manifest.dump(2) + "\n";

  for (const auto& [path, content] : files) {
    fs::create_directories(path.parent_path());
    write_file_atomic(path, content);
  }
  out << "kept " << stats.kept << " of " << stats.read << " posts (" << stats.malformed
      << " malformed); train " << total_train << ", validation " << total_validation
      << ", test " << total_test << '\n';
  return 0;
}

// --------------------------------------------------------------- train-lm

struct TrainArgs {
  std::vector<std::string> train;
  std::string output;
  NGramOptions options;
  std::string vocab_out;
};

int cmd_train_lm(const TrainArgs& args, std::ostream& out) {
  const auto examples = read_examples(args.train);
  Vocabulary vocab;
  std::vector<TrainingPair> pairs;
  pairs.reserve(examples.size());
  for (const auto& ex : examples) {
    TrainingPair pair;
    pair.code = encode(ex.code, vocab);
    pair.title = encode(ex.title, vocab);
    pairs.push_back(std::move(pair));
  }
  const NGramLM model = NGramLM::train(std::move(vocab), pairs, args.options);
  std::ostringstream ss;
  model.save(ss);
  write_file_atomic(args.output, ss.str());
  if (!args.vocab_out.empty()) {
    std::ostringstream vs;
    model.vocabulary().save(vs);
    write_file_atomic(args.vocab_out, vs.str());
  }
  out << "trained order-" << model.order() << " model on " << pairs.size()
      << " pairs, vocabulary " << model.vocabulary().size() << '\n';
  return 0;
}

// --------------------------------------------------------------- generate

struct GenerateArgs {
  std::string model;
  std::vector<std::string> input;
  std::string output;
  std::string strategy = "sample";
  SamplingConfig sampling;
  std::size_t beam_size = 20;
  std::size_t beam_k = 0;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
  require_file(args.model);
  const NGramLM model = NGramLM::load(fs::path(args.model));
  const auto examples = read_examples(args.input);
  args.sampling.validate();
  const Vocabulary& vocab = model.vocabulary();

  std::vector<PoolRecord> pools;
  pools.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const Example& ex = examples[i];
    PoolRecord rec;
    rec.id = ex.id;
    rec.language = ex.language;
    rec.strategy = args.strategy;
    rec.input = ex.code;
    rec.input_tokens = encode_closed(ex.code, vocab);
    rec.config = args.sampling;
    if (args.strategy == "sample") {
      rec.config.seed = input_seed(args.sampling.seed, i);
      const CandidatePool pool = decode_candidates(model, rec.input_tokens, rec.config);
      rec.candidate_tokens = pool.candidates;
    } else {
      const std::size_t k = args.beam_k == 0 ? args.beam_size : args.beam_k;
      for (auto& h : beam_search(model, rec.input_tokens, args.beam_size, k,
                                 args.sampling.max_length)) {
        rec.candidate_tokens.push_back(std::move(h.tokens));
        rec.log_probs.push_back(h.log_prob);
      }
      rec.config.num_samples = rec.candidate_tokens.size();
    }
    for (const auto& c : rec.candidate_tokens) rec.candidates.push_back(detokenize(c, vocab));
    pools.push_back(std::move(rec));
  }
  write_file_atomic(args.output, to_jsonl(pools));
  out << "wrote " << pools.size() << " candidate pools to " << args.output << '\n';
  return 0;
}

// ------------------------------------------------------------------- rank

struct RankArgs {
  std::string pool;
  std::string output;
  std::size_t k = 5;
  std::string strategy = "mmns";
  bool no_dedup = false;
};

int cmd_rank(const RankArgs& args, std::ostream& out, std::ostream& err) {
  require_file(args.pool);
  const auto pools = read_records<PoolRecord>(args.pool);
  std::vector<SelectionRecord> selections;
  selections.reserve(pools.size());
  std::size_t short_inputs = 0;
  for (const auto& pool : pools) {
    std::vector<TokenSequence> candidates = pool.candidate_tokens;
    if (candidates.empty()) {
      Vocabulary local;
      for (const auto& text : pool.candidates) candidates.push_back(encode(text, local));
    }
    SelectionRecord rec;
    rec.id = pool.id;
    rec.language = pool.language;
    rec.strategy = args.strategy;
    if (candidates.empty()) {
      err << "warning: input " << pool.id << " has an empty candidate pool\n";
      selections.push_back(std::move(rec));
      continue;
    }
    RankedSelection sel;
    if (args.strategy == "mmns") {
      sel = maximal_marginal_select(candidates, {args.k, !args.no_dedup});
      rec.initial_consistency = sel.initial_score();
      rec.marginal_objectives = sel.marginal_objectives;
    } else {
      sel = first_k_select(candidates, args.k);
    }
    rec.indices = sel.indices;
    for (std::size_t idx : sel.indices) rec.titles.push_back(pool.candidates[idx]);
    if (rec.titles.size() < args.k) ++short_inputs;
    selections.push_back(std::move(rec));
  }
  if (short_inputs > 0) {
    err << "warning: " << short_inputs << " input(s) had fewer than " << args.k
        << " distinct candidates; all distinct candidates were returned\n";
  }
  write_file_atomic(args.output, to_jsonl(selections));
  out << "ranked " << selections.size() << " pools with " << args.strategy << '\n';
  return 0;
}

// --------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string selections;
  std::vector<std::string> references;
  std::string k_sweep = "1,3,5";
  std::string group_by = "none";
  std::string output;
};

void print_metric_table(std::ostream& out, const std::string& heading,
                        const std::vector<std::size_t>& ks,
                        const std::vector<std::array<double, 4>>& rows) {
  out << heading << '\n' << "K";
  for (Metric m : kAllMetrics) out << '\t' << metric_name(m);
  out << '\n';
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out << ks[i];
    for (double v : rows[i]) out << '\t' << fixed2(v);
    out << '\n';
  }
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  if (args.group_by != "none" && args.group_by != "language") {
    throw Error("--group-by must be 'none' or 'language'");
  }
  const auto ks = parse_k_sweep(args.k_sweep);
  require_file(args.selections);
  const auto selections = read_records<SelectionRecord>(args.selections);

  std::map<std::string, Example> references;
  for (auto& ex : read_examples(args.references)) references[ex.id] = std::move(ex);

  Vocabulary surface;
  std::vector<EvaluationItem> items;
  items.reserve(selections.size());
  for (const auto& sel : selections) {
    EvaluationItem item;
    item.id = sel.id;
    std::string language = sel.language;
    std::string reference;
    if (sel.reference) {
      reference = *sel.reference;
    } else if (auto it = references.find(sel.id); it != references.end()) {
      reference = it->second.title;
      if (language.empty()) language = it->second.language;
    } else {
      throw Error("no reference title for input " + sel.id);
    }
    item.group = args.group_by == "language" ? language : "";
    item.reference = encode(reference, surface);
    for (const auto& t : sel.titles) item.candidates.push_back(encode(t, surface));
    items.push_back(std::move(item));
  }

  std::vector<MetricReport> reports;
  for (std::size_t k : ks) reports.push_back(evaluate_at_k(items, k));

  std::vector<std::array<double, 4>> overall;
  for (const auto& r : reports) overall.push_back(r.mean);
  print_metric_table(out, "all (" + std::to_string(items.size()) + " inputs)", ks, overall);

  nlohmann::ordered_json report;
  report["k_sweep"] = ks;
  report["inputs"] = items.size();
  auto metric_object = [](const std::array<double, 4>& v) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < kAllMetrics.size(); ++i) j[std::string(metric_name(kAllMetrics[i]))] = v[i];
    return j;
  };
  auto& rows = report["overall"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    auto row = metric_object(r.mean);
    row["k"] = r.k;
    rows.push_back(std::move(row));
  }

  if (args.group_by == "language") {
    std::map<std::string, std::vector<std::array<double, 4>>> by_group;
    for (const auto& r : reports) {
      for (const auto& [group, means] : r.group_means()) by_group[group].push_back(means);
    }
    auto& groups = report["groups"] = nlohmann::ordered_json::object();
    for (const auto& [group, group_rows] : by_group) {
      out << '\n';
      print_metric_table(out, group.empty() ? "(no language)" : group, ks, group_rows);
      auto& list = groups[group] = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < ks.size(); ++i) {
        auto row = metric_object(group_rows[i]);
        row["k"] = ks[i];
        list.push_back(std::move(row));
      }
    }
  }

  auto& per_example = report["examples"] = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < items.size(); ++e) {
    nlohmann::ordered_json ex;
    ex["id"] = items[e].id;
    auto& scores = ex["scores"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      auto row = metric_object(r.examples[e].best);
      row["k"] = r.k;
      scores.push_back(std::move(row));
    }
    per_example.push_back(std::move(ex));
  }
  if (!args.output.empty()) write_file_atomic(args.output, report.dump(2) + "\n");
  return 0;
}

// --------------------------------------------------------------- retrieve

struct RetrieveArgs {
  std::vector<std::string> train;
  std::string index;
  std::string save_index;
  std::vector<std::string> queries;
  std::string output;
  std::size_t k = 5;
  Bm25Params params;
};

int cmd_retrieve(const RetrieveArgs& args, std::ostream& out) {
  if (args.train.empty() == args.index.empty()) {
    throw Error("give exactly one of --train or --index");
  }
  Bm25Index index = [&] {
    if (!args.index.empty()) {
      require_file(args.index);
      return Bm25Index::load(args.index);
    }
    std::vector<RetrievalDoc> docs;
    for (const auto& ex : read_examples(args.train)) {
      RetrievalDoc d;
      try {
        d.id = detail::parse_int<std::int64_t>(ex.id);
      } catch (const Error&) {
        throw Error("retrieval documents need integer ids, got '" + ex.id + "'");
      }
      d.terms = tokenize(ex.code);
      d.title = ex.title;
      docs.push_back(std::move(d));
    }
    return Bm25Index::build(docs, args.params);
  }();
  if (!args.save_index.empty()) index.save(args.save_index);

  std::vector<SelectionRecord> selections;
  if (!args.queries.empty()) {
    if (args.output.empty()) throw Error("--queries needs --output");
    for (const auto& q : read_examples(args.queries)) {
      SelectionRecord rec;
      rec.id = q.id;
      rec.language = q.language;
      rec.strategy = "bm25";
      for (const auto& hit : index.query(tokenize(q.code), args.k)) {
        rec.titles.push_back(hit.title);
        rec.scores.push_back(hit.score);
      }
      selections.push_back(std::move(rec));
    }
    write_file_atomic(args.output, to_jsonl(selections));
  }
  out << "indexed " << index.size() << " documents; answered " << selections.size()
      << " queries\n";
  return 0;
}

// ---------------------------------------------------- compare-strategies

struct CompareArgs {
  std::string model;
  std::vector<std::string> input;
  std::string k_sweep = "1,2,3,4,5";
  ComparisonConfig config;
  bool no_beam = false;
  bool no_dedup = false;
  std::string output;
};

int cmd_compare(CompareArgs args, std::ostream& out) {
  require_file(args.model);
  const NGramLM model = NGramLM::load(fs::path(args.model));
  const auto examples = read_examples(args.input);
  args.config.k_sweep = parse_k_sweep(args.k_sweep);
  args.config.include_beam = !args.no_beam;
  args.config.dedup = !args.no_dedup;
  const StrategyComparison cmp = compare_strategies(model, examples, args.config);

  nlohmann::ordered_json report;
  report["inputs"] = examples.size();
  report["k_sweep"] = cmp.k_sweep;
  auto& tables = report["metrics"] = nlohmann::ordered_json::object();

  auto print_table = [&](const std::string& heading, auto value_of) {
    out << heading << "\nK";
    for (const auto& s : cmp.strategies) out << '\t' << s.name;
    out << '\n';
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < cmp.k_sweep.size(); ++i) {
      out << cmp.k_sweep[i];
      nlohmann::ordered_json row;
      row["k"] = cmp.k_sweep[i];
      for (const auto& s : cmp.strategies) {
        const double v = value_of(s, i);
        out << '\t' << fixed2(v);
        row[s.name] = v;
      }
      out << '\n';
      rows.push_back(std::move(row));
    }
    out << '\n';
    return rows;
  };

  for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
    const std::string name(metric_name(kAllMetrics[m]));
    tables[name] = print_table(name + "@K", [&](const StrategyResult& s, std::size_t i) {
      return s.reports[i].mean[m];
    });
  }
  report["mean_pairwise_relevance"] =
      print_table("mean pairwise relevance (lower is more diverse)",
                  [](const StrategyResult& s, std::size_t i) {
                    return s.mean_pairwise_relevance[i];
                  });
  if (!args.output.empty()) write_file_atomic(args.output, report.dump(2) + "\n");
  return 0;
}

void add_sampling_options(CLI::App& cmd, SamplingConfig& s) {
  cmd.add_option("--top-p", s.top_p, "Nucleus threshold beta in (0, 1]")->capture_default_str();
  cmd.add_option("--temperature", s.temperature, "Sampling temperature")->capture_default_str();
  cmd.add_option("--num-samples", s.num_samples, "Candidates sampled per input (M)")
      ->capture_default_str();
  cmd.add_option("--max-length", s.max_length, "Maximum generated title length in tokens")
      ->capture_default_str();
  cmd.add_option("--seed", s.seed, "Random seed")->envname(kSeedEnv)->capture_default_str();
  cmd.add_option("--threads", s.threads, "Worker threads per pool (0 = all cores)")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diverse title generation for code snippets: nucleus sampling, maximal "
               "marginal ranking, BM25 retrieval and evaluation",
               "titlegen"};
  app.set_config("--config", "", "TOML/INI file supplying option defaults per subcommand");
  app.require_subcommand(1);

  PrepareArgs prepare;
  auto* prep = app.add_subcommand("prepare", "Filter raw posts and split them chronologically");
  prep->add_option("--input", prepare.input, "Raw posts, one JSON object per line")->required();
  prep->add_option("--output-dir", prepare.output_dir, "Directory for split files")->required();
  prep->add_option("--seed", prepare.seed, "Seed for the validation/test partition")
      ->envname(kSeedEnv)
      ->capture_default_str();
  prep->add_option("--split-count", prepare.count, "Validation and test size per language")
      ->capture_default_str();
  prep->add_option("--split-fraction", prepare.fraction,
                   "Cap on each held-out split as a fraction of a language's posts")
      ->capture_default_str();
  prep->add_option("--override", prepare.overrides,
                   "Per-language sizes as language=VALIDATION:TEST (repeatable)");

  TrainArgs train;
  auto* tr = app.add_subcommand("train-lm", "Train the built-in n-gram title generator");
  tr->add_option("--train", train.train, "Training records (posts or examples)")->required();
  tr->add_option("--output", train.output, "Model file to write")->required();
  tr->add_option("--order", train.options.order, "n-gram order")->capture_default_str();
  tr->add_option("--weights", train.options.weights,
                 "Interpolation weights, lowest order first (default uniform)")
      ->delimiter(',');
  tr->add_option("--code-limit", train.options.code_limit, "Code tokens kept per input")
      ->capture_default_str();
  tr->add_option("--title-limit", train.options.title_limit, "Title tokens kept per pair")
      ->capture_default_str();
  tr->add_option("--vocab-out", train.vocab_out, "Also write the vocabulary file");

  GenerateArgs generate;
  auto* gen = app.add_subcommand("generate", "Sample candidate titles for each input");
  gen->add_option("--model", generate.model, "Model file from train-lm")->required();
  gen->add_option("--input", generate.input, "Input records (posts or examples)")->required();
  gen->add_option("--output", generate.output, "Candidate-pool file to write")->required();
  gen->add_option("--strategy", generate.strategy, "sample or beam")
      ->check(CLI::IsMember({"sample", "beam"}))
      ->capture_default_str();
  add_sampling_options(*gen, generate.sampling);
  gen->add_option("--beam-size", generate.beam_size, "Beam width for --strategy beam")
      ->capture_default_str();
  gen->add_option("--beam-k", generate.beam_k, "Hypotheses kept from the beam (default: beam size)");

  RankArgs rank;
  auto* rk = app.add_subcommand("rank", "Select K titles from each candidate pool");
  rk->add_option("--pool", rank.pool, "Candidate-pool file")->required();
  rk->add_option("--output", rank.output, "Selection file to write")->required();
  rk->add_option("--k", rank.k, "Titles to select per input")->capture_default_str();
  rk->add_option("--strategy", rank.strategy, "mmns (maximal marginal) or rns (first K samples)")
      ->check(CLI::IsMember({"mmns", "rns"}))
      ->capture_default_str();
  rk->add_flag("--no-dedup", rank.no_dedup, "Keep exact duplicate candidates eligible");

  EvaluateArgs evaluate;
  auto* ev = app.add_subcommand("evaluate", "Score selections with BLEU/ROUGE at K");
  ev->add_option("--selections", evaluate.selections, "Selection file")->required();
  ev->add_option("--references", evaluate.references, "Records holding reference titles");
  ev->add_option("--k", evaluate.k_sweep, "Comma-separated, increasing K values")
      ->capture_default_str();
  ev->add_option("--group-by", evaluate.group_by, "none or language")->capture_default_str();
  ev->add_option("--output", evaluate.output, "JSON report to write");

  RetrieveArgs retrieve;
  auto* rt = app.add_subcommand("retrieve", "BM25 retrieval baseline over training code");
  rt->add_option("--train", retrieve.train, "Training records to index");
  rt->add_option("--index", retrieve.index, "Previously saved index");
  rt->add_option("--save-index", retrieve.save_index, "Write the index to this file");
  rt->add_option("--queries", retrieve.queries, "Query records (their code is the query)");
  rt->add_option("--output", retrieve.output, "Selection file to write");
  rt->add_option("--k", retrieve.k, "Titles returned per query")->capture_default_str();
  rt->add_option("--k1", retrieve.params.k1, "BM25 term saturation")->capture_default_str();
  rt->add_option("--b", retrieve.params.b, "BM25 length normalization")->capture_default_str();

  CompareArgs compare;
  auto* cp = app.add_subcommand("compare-strategies",
                                "Beam search vs. random nucleus sampling vs. maximal marginal "
                                "nucleus sampling over a K sweep");
  cp->add_option("--model", compare.model, "Model file from train-lm")->required();
  cp->add_option("--input", compare.input, "Test records with reference titles")->required();
  cp->add_option("--k", compare.k_sweep, "Comma-separated, increasing K values")
      ->capture_default_str();
  add_sampling_options(*cp, compare.config.sampling);
  cp->add_option("--beam-size", compare.config.beam_size, "Beam width for the BS baseline")
      ->capture_default_str();
  cp->add_flag("--no-beam", compare.no_beam, "Skip the beam-search baseline");
  cp->add_flag("--no-dedup", compare.no_dedup, "Keep exact duplicates eligible for MMNS");
  cp->add_option("--output", compare.output, "JSON report to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*prep) return cmd_prepare(prepare, out, err);
    if (*tr) return cmd_train_lm(train, out);
    if (*gen) return cmd_generate(generate, out);
    if (*rk) return cmd_rank(rank, out, err);
    if (*ev) return cmd_evaluate(evaluate, out);
    if (*rt) return cmd_retrieve(retrieve, out);
    if (*cp) return cmd_compare(compare, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace titlegen::cli
