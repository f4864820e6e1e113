// Command-line surface: index, retrieve, evaluate, partition, verify.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tmselect/errors.hpp"
#include "tmselect/pipeline.hpp"
#include "tmselect/verify.hpp"

namespace {

using namespace tmselect;

std::vector<Sentence> load_sentences(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Sentence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(tokenize(line));
  }
  return out;
}

struct RetrieveFlags {
  std::string score = "DL";
  std::string norm = "CARD";
  std::string algo = "greedy_fast";
  std::string dl_mode = "canonical";
  std::string tie = "lowest_id";
  RunConfig cfg;
};

void add_config_flags(CLI::App* cmd, RetrieveFlags& flags) {
  cmd->add_option("--score", flags.score, "Coverage score: SDM, NGM or DL")
      ->capture_default_str();
  cmd->add_option("--norm", flags.norm, "Aspect normalization: CARD or IDF")
      ->capture_default_str();
  cmd->add_option("--lambda", flags.cfg.lambda, "Discount factor in [0,1]")
      ->capture_default_str();
  cmd->add_option("--k", flags.cfg.k, "Examples per query")->capture_default_str();
  cmd->add_option("--top-t", flags.cfg.capacity, "BM25 prefilter size")
      ->capture_default_str();
  cmd->add_option("--algo", flags.algo,
                  "Selection algorithm: greedy_full, greedy_fast, mmr, topk")
      ->capture_default_str();
  cmd->add_option("--alpha", flags.cfg.alpha, "MMR redundancy weight")
      ->capture_default_str();
  cmd->add_option("--dl-mode", flags.dl_mode,
                  "DL alignment: canonical, any_optimal, sampled")
      ->capture_default_str();
  cmd->add_option("--seed", flags.cfg.seed, "Seed for sampled alignments")
      ->capture_default_str();
  cmd->add_option("--tie", flags.tie,
                  "Tie policy: lowest_id, highest_id, insertion_order")
      ->capture_default_str();
  cmd->add_option("--jobs", flags.cfg.jobs, "Parallel query workers")
      ->capture_default_str();
}

RunConfig resolve(const RetrieveFlags& flags) {
  RunConfig cfg = flags.cfg;
  cfg.score = parse_score(flags.score);
  cfg.norm = parse_norm(flags.norm);
  cfg.algo = parse_algo(flags.algo);
  cfg.dl_mode.mode = parse_align(flags.dl_mode);
  cfg.tie = parse_tie(flags.tie);
  if (cfg.lambda < 0.0 || cfg.lambda > 1.0) throw InvalidParams("lambda must lie in [0,1]");
  if (cfg.k < 1) throw InvalidParams("k must be at least 1");
  if (cfg.capacity < 1) throw InvalidParams("top-t must be at least 1");
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"Translation-memory example selection by smoothed submodular coverage"};
  app.require_subcommand(1);

  auto* index_cmd = app.add_subcommand("index", "Build a retrieval index from a parallel corpus");
  std::string src_path, tgt_path, out_path;
  Bm25Params params;
  index_cmd->add_option("--source", src_path, "Source-side file, one sentence per line")
      ->required();
  index_cmd->add_option("--target", tgt_path, "Target-side file, line-aligned")->required();
  index_cmd->add_option("--out", out_path, "Index output path")->required();
  index_cmd->add_option("--k1", params.k1, "BM25 k1")->capture_default_str();
  index_cmd->add_option("--b", params.b, "BM25 b")->capture_default_str();

  auto* retrieve_cmd = app.add_subcommand("retrieve", "Select examples for each query");
  std::string r_index, r_queries, r_out, r_dump;
  RetrieveFlags flags;
  retrieve_cmd->add_option("--index", r_index, "Index file from `index`")->required();
  retrieve_cmd->add_option("--queries", r_queries, "Query file, one sentence per line")
      ->required();
  retrieve_cmd->add_option("--out", r_out, "Selections TSV output path")->required();
  retrieve_cmd->add_option("--dump-profiles", r_dump, "Debug TSV of candidate profiles");
  add_config_flags(retrieve_cmd, flags);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score selections against references");
  std::string e_selections, e_references, e_out;
  bool e_pooled = false;
  evaluate_cmd->add_option("--selections", e_selections, "Selections TSV from `retrieve`")
      ->required();
  evaluate_cmd->add_option("--references", e_references, "Reference file, line-aligned")
      ->required();
  evaluate_cmd->add_option("--out", e_out, "Per-query metrics TSV output path")->required();
  evaluate_cmd->add_flag("--pooled-pertinence", e_pooled,
                         "Clip useful counts across examples instead of per example");

  auto* partition_cmd = app.add_subcommand("partition", "Bucket queries by best TM match");
  std::string p_index, p_queries, p_prefix;
  partition_cmd->add_option("--index", p_index, "Index file from `index`")->required();
  partition_cmd->add_option("--queries", p_queries, "Query file")->required();
  partition_cmd->add_option("--out-prefix", p_prefix, "Prefix for per-bucket TSV files")
      ->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run the objective property checks");
  std::uint64_t v_seed = 42;
  long long v_budget = 2'000'000;
  verify_cmd->add_option("--seed", v_seed, "Seed for randomized checks")
      ->capture_default_str();
  verify_cmd->add_option("--budget", v_budget, "Exhaustive-search subset budget")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*index_cmd) {
    TranslationMemory tm = load_parallel(src_path, tgt_path);
    build_index(tm, params);  // fail early on bad params or empty corpus
    save_index(tm, params, out_path);
    std::cout << "indexed " << tm.size() << " entries -> " << out_path << "\n";
    return 0;
  }

  if (*retrieve_cmd) {
    RunConfig cfg = resolve(flags);
    LoadedIndex loaded = load_index(r_index);
    auto queries = load_sentences(r_queries);
    auto records = retrieve_batch(loaded.tm, loaded.index, queries, cfg);
    std::ofstream out(r_out);
    if (!out) throw IoError("cannot write " + r_out);
    write_selections_tsv(out, records, cfg);
    if (!r_dump.empty()) {
      std::ofstream dump(r_dump);
      if (!dump) throw IoError("cannot write " + r_dump);
      for (std::size_t q = 0; q < queries.size(); ++q) {
        if (queries[q].empty()) continue;
        auto qp = profile_query(loaded.tm, loaded.index, queries[q], cfg);
        dump << "# query " << q << "\n";
        export_profiles_tsv(dump, qp.space, qp.profiles);
      }
    }
    int failures = 0;
    for (const auto& rec : records) {
      if (rec.failed) {
        ++failures;
        std::cerr << "query " << rec.query_index << " failed: " << rec.error << "\n";
      }
    }
    std::cout << "retrieved " << records.size() - failures << "/" << records.size()
              << " queries -> " << r_out << "\n";
    return failures == 0 ? 0 : 1;
  }

  if (*evaluate_cmd) {
    std::ifstream sel_in(e_selections);
    if (!sel_in) throw IoError("cannot open " + e_selections);
    auto records = read_selections_tsv(sel_in);
    auto references = load_sentences(e_references);
    auto report = evaluate_selections(records, references,
                                      e_pooled ? ClipMode::pooled : ClipMode::per_example);
    std::ofstream out(e_out);
    if (!out) throw IoError("cannot write " + e_out);
    write_metrics_tsv(out, report);
    std::cout << "evaluated=" << report.evaluated << " skipped=" << report.skipped
              << " coverage=" << report.means.coverage
              << " pertinence=" << report.means.pertinence
              << " mean_length=" << report.means.mean_length << "\n";
    return 0;
  }

  if (*partition_cmd) {
    LoadedIndex loaded = load_index(p_index);
    auto queries = load_sentences(p_queries);
    auto rows = partition_testset(queries, loaded.tm);
    for (Bucket b : {Bucket::test04, Bucket::test06, Bucket::discard}) {
      std::string path = p_prefix + bucket_name(b) + ".tsv";
      std::ofstream out(path);
      if (!out) throw IoError("cannot write " + path);
      out << "query_index\tbest_similarity\tbucket\n";
      char buf[32];
      for (const auto& row : rows) {
        if (row.bucket != b) continue;
        std::snprintf(buf, sizeof(buf), "%.6f", row.best_similarity);
        out << row.query_index << "\t" << buf << "\t" << bucket_name(row.bucket) << "\n";
      }
    }
    std::cout << "partitioned " << rows.size() << " queries -> " << p_prefix << "*.tsv\n";
    return 0;
  }

  if (*verify_cmd) {
    auto results = run_verification(v_seed, v_budget);
    bool ok = print_verification(std::cout, results);
    return ok ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tmselect::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
