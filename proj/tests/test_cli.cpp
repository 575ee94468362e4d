// End-to-end exit-code and output contract checks against the built binary.
// Usage: test_cli <path-to-udg> <scratch-dir>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

int failures = 0;
std::string udgPath;
std::string scratch;

struct RunResult {
  int exitCode;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  std::string cmd = udgPath + " " + args + " 2>&1";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {127, "popen failed"};
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  return {code, out};
}

void check(bool ok, const std::string& what, const RunResult& r) {
  if (ok) {
    std::cout << "[PASS] " << what << "\n";
  } else {
    std::cout << "[FAIL] " << what << "\n--- exit " << r.exitCode << ", output:\n"
              << r.output << "---\n";
    ++failures;
  }
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: test_cli <udg binary> <scratch dir>\n";
    return 2;
  }
  udgPath = argv[1];
  scratch = argv[2];

  {
    RunResult r = run("groebner --graph k4 --pin auto");
    check(r.exitCode == 2 && contains(r.output, "INFEASIBLE") && contains(r.output, "{1}"),
          "groebner k4: exit 2, cites basis {1}", r);
  }
  {
    RunResult r = run("groebner --graph k4_minus_e --pin auto --solutions");
    check(r.exitCode == 0 && contains(r.output, "4*y4^3 - 3*y4") &&
              contains(r.output, "FEASIBLE") && contains(r.output, "complex"),
          "groebner k4-e: exit 0, golden basis, feasibility caveat printed", r);
    check(contains(r.output, "duplicates: 1~4") && contains(r.output, "[distinct]"),
          "groebner k4-e --solutions flags the duplicate branch", r);
  }
  {
    RunResult r = run("groebner --graph k2_3 --pin \"1=0,0;3=1,0\" --saturate same-part");
    check(r.exitCode == 2, "groebner saturated k2_3: exit 2 (infeasible)", r);
  }
  {
    RunResult r = run("groebner --graph k4_minus_e --max-pairs 1");
    check(r.exitCode == 4 && contains(r.output, "LIMIT"), "groebner limit: exit 4", r);
  }
  {
    RunResult r = run("solve --graph k2");
    check(r.exitCode == 0 && contains(r.output, "(1, 0)"), "solve k2: exit 0, unit edge", r);
  }
  {
    RunResult r = run("solve --graph k2_3 --restarts 25 --seed 5");
    check(r.exitCode == 3 && contains(r.output, "not a nonexistence proof"),
          "solve k2_3: exit 3, honest failure wording", r);
  }
  {
    RunResult r = run("solve --graph nonsense");
    check(r.exitCode == 1, "unknown graph: exit 1", r);
  }
  {
    RunResult r = run("graph --diffset 1,2,4 --mod 7 --isomorphic-to \"(5,-5)^7\"");
    check(r.exitCode == 0 && contains(r.output, "isomorphic to (5,-5)^7: yes"),
          "graph: difference set vs LCF isomorphism", r);
  }
  {
    std::string doc = scratch + "/k4e.json";
    RunResult r = run("solve --graph k4_minus_e --seed 3 --out " + doc);
    check(r.exitCode == 0, "solve k4-e writes a document", r);
    RunResult v = run("verify --in " + doc);
    check(v.exitCode == 0 && contains(v.output, "PASS"), "verify round trip passes", v);
    std::string manifest = slurp(doc + ".manifest.json");
    check(contains(manifest, "run_manifest") && contains(manifest, "\"seed\""),
          "manifest written next to the document", {0, manifest});

    RunResult rig = run("rigidity --in " + doc);
    check(rig.exitCode == 0 && contains(rig.output, "flex count"), "rigidity report runs", rig);

    std::string svg = scratch + "/k4e.svg";
    RunResult ren = run("render --in " + doc + " --out " + svg);
    std::string svg1 = slurp(svg);
    run("render --in " + doc + " --out " + svg);
    std::string svg2 = slurp(svg);
    check(ren.exitCode == 0 && !svg1.empty() && svg1 == svg2,
          "render: byte-identical SVG across runs", ren);
  }
  {
    // Determinism: identical invocations write identical documents.
    std::string a = scratch + "/det_a.json", b = scratch + "/det_b.json";
    run("solve --graph heawood_minus_edge --seed 11 --out " + a);
    run("solve --graph heawood_minus_edge --seed 11 --out " + b);
    check(!slurp(a).empty() && slurp(a) == slurp(b),
          "solve document is bit-identical across reruns", {0, ""});
  }
  {
    RunResult r = run("plan --plan heawood --svg " + scratch + "/he.svg");
    check(r.exitCode == 0 && contains(r.output, "20 realized unit edges"),
          "plan heawood executes at the defaults", r);
    std::string svg = slurp(scratch + "/he.svg");
    check(contains(svg, "stroke-dasharray"),
          "plan SVG draws the off-unit monitored edge dashed", {0, svg});
  }
  {
    RunResult r = run("sweep --plan heawood --axis alpha --range 2.3:2.5 --samples 20");
    check(r.exitCode == 0 && contains(r.output, "NO_BRACKET"),
          "sweep over a dead region reports NO_BRACKET", r);
  }
  {
    RunResult r = run("sweep --plan four_bar --axis theta --range 0.3:2.9 --samples 50");
    check(r.exitCode == 0 && contains(r.output, "bracket ["),
          "four-bar sweep prints its bracket", r);
  }
  {
    std::string doc = scratch + "/fb.json";
    RunResult r = run("bisect --plan four_bar --axis theta --lo 1.9 --hi 2.3 --out " + doc);
    check(r.exitCode == 0 && contains(r.output, "PASS"),
          "four-bar bisect converges and verifies", r);
    check(contains(slurp(doc), "\"candidate\": true"),
          "bisect output document is labeled candidate", {0, slurp(doc)});
  }
  {
    RunResult r = run("constraints --graph k2_3 --pin \"1=0,0;3=1,0\"");
    check(r.exitCode == 0 && contains(r.output, "x2^2 - 2*x2 + y2^2"),
          "constraints prints the expanded pinned system", r);
  }
  {
    RunResult r = run("sweep --plan heawood --axis alpha --range 0:99 --samples 10");
    check(r.exitCode == 1, "sweep range outside the parameter range: exit 1", r);
  }

  std::cout << (failures == 0 ? "ALL CLI CHECKS PASSED\n" : "CLI CHECKS FAILED\n");
  return failures == 0 ? 0 : 1;
}
