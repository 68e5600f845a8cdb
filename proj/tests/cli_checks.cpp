// Exercises the installed CLI binary end to end: JSON well-formedness of the
// core subcommands, the CSV schema of `graph`, exit codes, and byte-for-byte
// determinism across repeated invocations. The binary path arrives as argv[1].

#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

int failures = 0;
void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_checks <takagi-binary>\n";
    return 2;
  }
  const std::string bin = argv[1];
  using json = nlohmann::json;

  {
    const RunResult r = run(bin + " eval 1/7");
    expect(r.exit_code == 0, "eval exit code");
    const json j = json::parse(r.out);
    expect(j["output"]["value"] == "22/49", "eval value");
    expect(j["command"] == "eval", "eval command echo");
  }
  {
    const RunResult r = run(bin + " eval 1/12");
    expect(json::parse(r.out)["output"]["value"] == "1/3", "eval 1/12");
  }
  {
    const RunResult r = run(bin + " eval 0");
    expect(json::parse(r.out)["output"]["value"] == "0", "eval 0");
  }
  {
    const RunResult r = run(bin + " eval 5/4");
    expect(r.exit_code == 2, "domain error exit code");
  }
  {
    const RunResult r = run(bin + " expand 3/7");
    expect(json::parse(r.out)["output"]["text"] == "[3,(5 5 4)]", "expand 3/7");
  }
  {
    const RunResult r = run(bin + " expand 22/49");
    expect(r.exit_code == 3, "truncated expansion exit code");
    expect(json::parse(r.out)["output"]["tail"] == "truncated", "expand 22/49 tail");
  }
  {
    const RunResult r = run(bin + " cardinality 7/12");
    const json j = json::parse(r.out);
    expect(j["output"]["kind"] == "Exact" && j["output"]["count"] == 4, "cardinality 7/12");
  }
  {
    const RunResult r = run(bin + " cardinality 1/2");
    expect(json::parse(r.out)["output"]["kind"] == "Infinite", "cardinality 1/2");
  }
  {
    const RunResult r = run(bin + " levelset 7/12 --cover-depth 20");
    const json j = json::parse(r.out);
    expect(j["output"]["points"].size() == 4, "levelset points");
    expect(j["output"]["complete"] == true, "levelset complete");
    expect(j["output"]["cover"]["clusters"].size() == 4, "levelset cover clusters");
  }
  {
    const RunResult r = run(bin + " levelset 3/8");
    expect(r.exit_code == 2, "levelset infinite exit code");
  }
  {
    const RunResult r = run(bin + " witness 3");
    const json j = json::parse(r.out);
    expect(j["output"]["ordinate"] == "73/192" && j["output"]["target"] == 6, "witness 3");
  }
  {
    const RunResult r = run(bin + " measure --depth-n 1 --max-k 20");
    const json j = json::parse(r.out);
    expect(j["output"].contains("lower") && j["output"].contains("upper"), "measure fields");
  }
  {
    const RunResult r = run(bin + " graph --depth 3");
    expect(r.out.rfind("x_rational,x_decimal,y_rational,y_decimal\n", 0) == 0, "graph header");
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    expect(lines == 10, "graph line count");  // header + 9 samples
    expect(r.out.find("3/8,0.375000000000,5/8,0.625000000000") != std::string::npos,
           "graph row content");
  }
  {
    const RunResult r = run(bin + " humps --max-order 3 --filter non_subsidiary --format csv");
    expect(r.out.rfind("x0,bits,order,generation,leading,first_generation,subsidiary,j_lo,j_hi",
                       0) == 0,
           "humps csv header");
    expect(r.out.find("1/4,01,1,1,1,1,0,1/2,2/3") != std::string::npos, "humps csv row");
  }

  // Determinism: identical invocations produce identical bytes.
  for (const std::string& cmd :
       {std::string("cardinality 73/192"), std::string("solve 777/2048 --all --depth 2"),
        std::string("measure --depth-n 1 --max-k 15"), std::string("graph --depth 4"),
        std::string("humps --max-order 4 --format json")}) {
    const RunResult a = run(bin + " " + cmd);
    const RunResult b = run(bin + " " + cmd);
    expect(a.out == b.out && a.exit_code == b.exit_code, "determinism of `" + cmd + "`");
  }

  if (failures == 0) std::cout << "cli checks passed\n";
  return failures == 0 ? 0 : 1;
}
