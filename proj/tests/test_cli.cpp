// drives the installed binary through representative invocations and checks
// exit codes, JSON shape, and determinism

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_bin;
int g_failures = 0;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = g_bin + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    std::cerr << "cannot run: " << cmd << "\n";
    exit(1);
  }
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

void expect(bool cond, const std::string& what) {
  if (!cond) {
    std::cerr << "FAIL: " << what << "\n";
    ++g_failures;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-binary>\n";
    return 1;
  }
  g_bin = argv[1];

  // enumerate: counts cross-checked by hand-listing valence profiles
  {
    auto r = run("trees enumerate --max-vertices 2 --max-valence 2");
    expect(r.exit_code == 0, "enumerate exit");
    auto j = json::parse(r.out);
    expect(j["results"]["count"] == 10, "eta + C0..C2 + six 2-vertex stacks");
    expect(j["command"] == "trees enumerate", "command echo");
  }

  // canonical: determinism and comparison
  {
    auto r1 = run("trees canonical --input corolla:2");
    auto r2 = run("trees canonical --input corolla:2");
    expect(r1.out == r2.out, "identical inputs give byte-identical reports");
    auto r3 = run(
        "trees canonical --input corolla:2 --compare "
        "'{\"root\":\"a\",\"vertices\":[{\"id\":\"v\",\"out\":\"a\",\"in\":[\"b\",\"c\"]}]}'");
    expect(json::parse(r3.out)["results"]["isomorphic"] == true, "renamed corolla isomorphic");
  }

  // aut
  {
    auto r = run("trees aut --input corolla:2");
    expect(json::parse(r.out)["results"]["order"] == 2, "corolla(2) automorphisms");
  }

  // dot emission is optional but should be syntactically plausible
  {
    auto r = run("trees dot --input linear:2");
    auto dot = json::parse(r.out)["results"]["dot"].get<std::string>();
    expect(dot.find("graph tree {") == 0, "dot header");
  }

  // hom counts
  {
    auto r = run("hom --source linear:1 --target linear:2");
    expect(json::parse(r.out)["results"]["count"] == 6, "hom(linear 1, linear 2)");
    auto r2 = run("hom --source eta --target corolla:3");
    expect(json::parse(r2.out)["results"]["count"] == 4, "hom(eta, corolla 3)");
    auto r3 = run(
        "hom --source-gens '{\"gens\":[{\"name\":\"v\",\"valence\":2}]}' "
        "--target-gens '{\"gens\":[{\"name\":\"x\",\"valence\":2}]}' --elt-bound 1");
    expect(json::parse(r3.out)["results"]["count"] == 2, "hom_free(v2, x2)");
  }

  // nerve -> segal-check round trip through a file
  {
    auto r = run("nerve --gens '{\"gens\":[{\"name\":\"x\",\"valence\":2}]}' --max-vertices 2 --max-valence 2");
    expect(r.exit_code == 0, "nerve exit");
    std::string path = "/tmp/dendro_cli_nerve.json";
    FILE* f = fopen(path.c_str(), "w");
    fwrite(r.out.data(), 1, r.out.size(), f);
    fclose(f);
    auto r2 = run("segal-check --input " + path);
    expect(r2.exit_code == 0, "segal exit");
    auto j = json::parse(r2.out);
    expect(j["results"]["pass"] == true, "nerve passes strict segal");
    expect(j["results"]["functorial"] == true, "loaded tables are functorial");
    std::remove(path.c_str());
  }

  // kan-verify
  {
    auto r = run(
        "kan-verify --proposition lke --tree corolla:2 "
        "--gens '{\"gens\":[{\"name\":\"v\",\"valence\":2}]}' --tree-bound 3 --elt-bound 2");
    auto j = json::parse(r.out);
    expect(r.exit_code == 0 && j["results"]["classes"] == 2, "lke classes");
  }

  // verify dispatcher
  {
    auto r = run("verify --prop hall --order 2");
    auto j = json::parse(r.out);
    expect(r.exit_code == 0, "hall verify exit");
    expect(j["results"]["tables_checked"] == 16, "hall order-2 exhaustion");
    auto r2 = run("verify --prop nonsense");
    expect(r2.exit_code == 2, "unknown proposition is a usage error");
  }

  // failure and truncation exit codes
  {
    auto r = run("bousfield extract --magma '{\"n\":2,\"e\":0,\"bracket\":[[0,0],[1,1]]}'");
    expect(r.exit_code == 1, "failed relations exit 1");
    auto j = json::parse(r.out);
    expect(j["results"]["failed_relation"] == "[a,a] = e", "witnessed failure");
    auto r2 = run(
        "hom --source-gens '{\"gens\":[{\"name\":\"u\",\"valence\":1}]}' "
        "--target-gens '{\"gens\":[{\"name\":\"y\",\"valence\":1}]}' --elt-bound 2");
    expect(r2.exit_code == 3, "truncation exits 3 without permission");
    auto r3 = run(
        "--allow-truncated hom --source-gens '{\"gens\":[{\"name\":\"u\",\"valence\":1}]}' "
        "--target-gens '{\"gens\":[{\"name\":\"y\",\"valence\":1}]}' --elt-bound 2");
    expect(r3.exit_code == 0, "allow-truncated exits 0");
  }

  // malformed JSON is a usage error
  {
    auto r = run("trees canonical --input '{\"root\": }'");
    expect(r.exit_code == 2, "malformed JSON exit");
  }

  // --meta adds a timestamp outside the results payload
  {
    auto r1 = run("trees canonical --input eta");
    auto r2 = run("--meta trees canonical --input eta");
    auto j1 = json::parse(r1.out), j2 = json::parse(r2.out);
    expect(!j1.contains("meta") && j2.contains("meta"), "meta flag");
    expect(j1["results"] == j2["results"], "meta stays outside the payload");
  }

  // --jobs does not change output
  {
    auto r1 = run("verify --prop hall --order 3");
    auto r2 = run("--jobs 4 verify --prop hall --order 3");
    expect(json::parse(r1.out)["results"] == json::parse(r2.out)["results"],
           "jobs-independent results");
  }

  if (g_failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cout << "test_cli: " << g_failures << " failures\n";
  return 1;
}
