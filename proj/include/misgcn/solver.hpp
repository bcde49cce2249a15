#pragma once

#include <string>
#include <string_view>

#include "misgcn/gcn.hpp"
#include "misgcn/instance_io.hpp"
#include "misgcn/tree_search.hpp"

namespace misgcn {

enum class InputFormat { kCnf, kEdgeList, kDimacs };

InputFormat parse_input_format(std::string_view name);

/// Parses `text` into an instance of the given kind. SAT requires CNF input;
/// MIS/MVC/MC require a graph format.
ProblemInstance load_instance(ProblemKind kind, InputFormat format, std::string_view text, std::string id);

/// Reduces the instance to MIS, runs tree search (config.threads workers),
/// maps the result back and verifies it. For SAT the search stops once an
/// independent set of clause-count size is found. Throws ResourceError when
/// the MC complement exceeds complement_limit vertices.
SolutionReport solve_problem(const ProblemInstance& instance, const GcnModel& model,
                             const SearchConfig& config, BestSolution* search = nullptr,
                             Vertex complement_limit = 20000);

}  // namespace misgcn
