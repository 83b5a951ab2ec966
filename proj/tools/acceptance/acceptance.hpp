#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hypflow::acceptance {

struct Options {
  std::filesystem::path out_dir = "acceptance_out";
  std::uint64_t seed = 20240611;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;  // runtime limit in seconds, part of the verdict
};

// Criteria 1..11. Each writes its CSV outputs under out_dir/c<id>/.
std::vector<int> all_ids();
Result run_criterion(int id, const Options& opt);
std::vector<Result> run(const std::vector<int>& ids, const Options& opt);

std::string format_line(const Result& r);

}  // namespace hypflow::acceptance
