#pragma once

#include "raypareto/problem.hpp"

#include <string>

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(RAYPARETO_PROBLEM_DIR) + "/" + name; }

inline raypareto::Problem load(const std::string& name) { return raypareto::load_problem_file(path(name)); }

}  // namespace fixtures
