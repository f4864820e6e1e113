// End-to-end checks against the installed command-line binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kBin = TMSELECT_BIN;
const std::string kData = TMSELECT_DATA_DIR;

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("tmselect_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string file(const std::string& name, const std::string& content) const {
    auto p = path(name);
    std::ofstream out(p);
    out << content;
    return p;
  }
};

int run(const std::string& args) {
  std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("index + retrieve + evaluate round trip on the micro corpus") {
  Workspace ws;
  auto index = ws.path("index.tsv");
  REQUIRE(run("index --source " + kData + "/microcorpus/tm.src.txt --target " + kData +
              "/microcorpus/tm.tgt.txt --out " + index) == 0);
  {
    std::ifstream in(index);
    std::string magic;
    std::getline(in, magic);
    CHECK(magic == "TMSELECT-BM25-v1");
  }

  auto selections = ws.path("sel.tsv");
  auto profiles = ws.path("profiles.tsv");
  REQUIRE(run("retrieve --index " + index + " --queries " + kData +
              "/microcorpus/queries.txt --out " + selections +
              " --score DL --norm IDF --lambda 0 --k 3 --algo greedy_fast"
              " --dump-profiles " + profiles) == 0);
  auto sel_text = slurp(selections);
  CHECK(sel_text.find("# config:") != std::string::npos);
  CHECK(sel_text.find("0\t0,1,2\t") != std::string::npos);
  CHECK(slurp(profiles).find("8:vert") != std::string::npos);

  auto metrics = ws.path("metrics.tsv");
  REQUIRE(run("evaluate --selections " + selections + " --references " + kData +
              "/microcorpus/queries.txt --out " + metrics) == 0);
  CHECK(slurp(metrics).find("0.909091") != std::string::npos);

  auto bad_refs = ws.file("refs2.txt", "une ligne .\nune autre .\n");
  CHECK(run("evaluate --selections " + selections + " --references " + bad_refs +
            " --out " + ws.path("m2.tsv")) == 2);
}

TEST_CASE("retrieve output is byte-identical across runs and job counts") {
  Workspace ws;
  auto index = ws.path("index.tsv");
  REQUIRE(run("index --source " + kData + "/microcorpus/tm.src.txt --target " + kData +
              "/microcorpus/tm.tgt.txt --out " + index) == 0);
  auto queries = ws.file("q.txt",
                         "Le chat est assis sur le tapis vert du salon .\n"
                         "Le chien dort dans le salon .\n"
                         "tapis vert .\n");
  auto a = ws.path("a.tsv");
  auto b = ws.path("b.tsv");
  auto c = ws.path("c.tsv");
  std::string flags = " --score DL --norm CARD --lambda 0.5 --k 2 --seed 7";
  REQUIRE(run("retrieve --index " + index + " --queries " + queries + " --out " + a + flags +
              " --jobs 1") == 0);
  REQUIRE(run("retrieve --index " + index + " --queries " + queries + " --out " + b + flags +
              " --jobs 4") == 0);
  REQUIRE(run("retrieve --index " + index + " --queries " + queries + " --out " + c + flags +
              " --jobs 1") == 0);
  CHECK(slurp(a) == slurp(c));  // identical config: byte-identical output

  // Different worker counts echo a different config line but must produce
  // the same records in the same order.
  auto strip_config = [](std::string text) {
    auto nl = text.find('\n');
    return text.substr(nl + 1);
  };
  CHECK(strip_config(slurp(a)) == strip_config(slurp(b)));
}

TEST_CASE("index rejects mismatched corpora with exit 2") {
  Workspace ws;
  auto src = ws.file("s.txt", "a b\nc d\n");
  auto tgt = ws.file("t.txt", "x\n");
  CHECK(run("index --source " + src + " --target " + tgt + " --out " + ws.path("i.tsv")) == 2);
}

TEST_CASE("index rejects an empty corpus with exit 2") {
  Workspace ws;
  auto src = ws.file("s.txt", "");
  auto tgt = ws.file("t.txt", "");
  CHECK(run("index --source " + src + " --target " + tgt + " --out " + ws.path("i.tsv")) == 2);
}

TEST_CASE("a failing query yields exit 1 but the batch completes") {
  Workspace ws;
  auto index = ws.path("index.tsv");
  REQUIRE(run("index --source " + kData + "/microcorpus/tm.src.txt --target " + kData +
              "/microcorpus/tm.tgt.txt --out " + index) == 0);
  auto queries = ws.file("q.txt", "Le chat dort .\n\nLe salon est grand .\n");
  auto out = ws.path("sel.tsv");
  CHECK(run("retrieve --index " + index + " --queries " + queries + " --out " + out) == 1);
  auto text = slurp(out);
  CHECK(text.find("failed:") != std::string::npos);
  CHECK(text.find("\tok") != std::string::npos);
}

TEST_CASE("partition writes one file per bucket") {
  Workspace ws;
  auto index = ws.path("index.tsv");
  REQUIRE(run("index --source " + kData + "/microcorpus/tm.src.txt --target " + kData +
              "/microcorpus/tm.tgt.txt --out " + index) == 0);
  auto queries = ws.file("q.txt",
                         "Le chat est assis sur le sol .\n"        // exact copy
                         "Le chat mange dans la cuisine verte .\n" // best match 0.44
                         "aucun mot commun ici vraiment helas oui non\n");
  REQUIRE(run("partition --index " + index + " --queries " + queries + " --out-prefix " +
              ws.path("buckets.")) == 0);
  auto t6 = slurp(ws.path("buckets.test-0.6.tsv"));
  auto t4 = slurp(ws.path("buckets.test-0.4.tsv"));
  auto drop = slurp(ws.path("buckets.discard.tsv"));
  CHECK(t6.find("0\t1.000000\ttest-0.6") != std::string::npos);
  CHECK(t4.find("1\t") != std::string::npos);
  CHECK(drop.find("2\t") != std::string::npos);
}

TEST_CASE("verify exits zero and prints one line per property") {
  Workspace ws;
  auto out = ws.path("verify.txt");
  std::string cmd = kBin + " verify --seed 5 > " + out + " 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  auto text = slurp(out);
  for (const char* property :
       {"submodularity_inequality", "lambda_reductions", "approximation_bound", "bound_tightness",
        "boolean_lambda0_equivalence"}) {
    CHECK(text.find(property) != std::string::npos);
  }
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("unknown flags exit nonzero") {
  CHECK(run("retrieve --nonsense") != 0);
}
