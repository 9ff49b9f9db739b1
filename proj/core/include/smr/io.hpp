#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "smr/model.hpp"

namespace smr {

struct ParsedInstance {
  Instance instance;
  RestrictionSet restrictions;
};

// Grammar:
//   header        sm <n_left> <n_right> | sr <n>
//   preferences   <agent>: <agent> <agent> ...   (one line per agent)
//   restrictions  forbid <a> <b> | force <a> <b> (after all preference lines)
// '#' starts a comment. Errors throw ParseError carrying the line number.
ParsedInstance parse_instance(std::string_view text);
ParsedInstance parse_instance(std::istream& in);
ParsedInstance read_instance_file(const std::string& path);

struct SerializeOptions {
  bool roles_as_comments = false;
};

// Canonical text: header, preference lines in agent order, then forbid lines
// and force lines, each in edge order.
std::string serialize_instance(const Instance& inst, const RestrictionSet& r = {},
                               const SerializeOptions& options = {});

// FNV-1a 64 over the canonical text, as 16 hex digits.
std::string instance_hash(const Instance& inst, const RestrictionSet& r);
std::string text_hash(std::string_view text);

// Lines "<a> <b> <rational>"; '#' comments allowed.
WeightAssignment parse_weights(const Instance& inst, std::string_view text);

std::string edge_name(const Instance& inst, const Edge& e);
std::string matching_string(const Instance& inst, const Matching& m);
Edge parse_edge(const Instance& inst, std::string_view a, std::string_view b);

}  // namespace smr
