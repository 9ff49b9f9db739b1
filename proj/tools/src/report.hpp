#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "smr/smr.hpp"

namespace smr::cli {

using nlohmann::json;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json pairs_json(const Instance& inst, const std::vector<Edge>& edges);

// A result record with every schema field present. Matching-dependent fields
// are null until fill_matching is called.
json base_record(std::string hash, std::string problem, std::string algorithm, std::string status);

void fill_matching(json& record, const Instance& inst, const RestrictionSet& r, const Matching& m,
                   const WeightAssignment& w);

void print_record(std::ostream& out, const json& record);

}  // namespace smr::cli
