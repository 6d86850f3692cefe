// Command-line front end. One job per invocation, or --batch for a
// JSON-lines file of jobs. Exit codes: 0 success/equal, 1 cover sides
// differ, 2 validation failure, 3 non-acyclic, 4 unsupported presentation
// shape.

#include "polytor/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"polytor: exact twisted Alexander polynomials / polynomial torsions "
               "and finite abelian cover verification"};

  std::string input_path, command = "compute";
  bool json_only = false;
  bool batch = false;
  long conductor_override = 0;

  app.add_option("--input", input_path, "job file (JSON; JSON-lines with --batch)")->required();
  app.add_option("--command", command,
                 "compute | verify-cover | branched | homology-order | characters | rs");
  app.add_option("--conductor", conductor_override, "override the cyclotomic conductor N");
  app.add_flag("--json", json_only, "machine output only");
  app.add_flag("--batch", batch, "treat input as JSON-lines, one job per line");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "error: cannot open input file '" << input_path << "'\n";
    return 2;
  }

  auto run_one = [&](const std::string& text) -> polytor::JobResult {
    nlohmann::json job;
    try {
      job = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      polytor::JobResult r;
      r.exit_code = 2;
      r.machine = nlohmann::json{{"error", std::string("invalid JSON: ") + e.what()}};
      r.human = r.machine["error"].get<std::string>() + "\n";
      return r;
    }
    if (conductor_override > 0) job["conductor"] = conductor_override;
    std::string cmd = command;
    if (job.contains("command")) cmd = job["command"].get<std::string>();
    return polytor::run_job_checked(job, cmd);
  };

  if (batch) {
    std::string line;
    int worst = 0;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      polytor::JobResult r = run_one(line);
      nlohmann::json out = r.machine;
      out["exit_code"] = r.exit_code;
      std::cout << out.dump() << "\n";
      worst = std::max(worst, r.exit_code);
    }
    return worst;
  }

  std::stringstream buf;
  buf << in.rdbuf();
  polytor::JobResult r = run_one(buf.str());
  if (!json_only) std::cout << r.human;
  std::cout << r.machine.dump(2) << "\n";
  return r.exit_code;
}
