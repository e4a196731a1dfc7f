#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eada {

enum class Domain { Source, Target };

inline const char* domain_name(Domain d) {
  return d == Domain::Source ? "source" : "target";
}

// The unit of every pool: a dense feature vector, an optional class label
// (absent = unlabeled), and the domain the point was drawn from.
struct Sample {
  std::vector<double> features;
  std::optional<int> label;
  Domain domain = Domain::Target;
};

using Dataset = std::vector<Sample>;

struct ShapeError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ContractError : std::runtime_error { using std::runtime_error::runtime_error; };
struct BudgetError : std::runtime_error { using std::runtime_error::runtime_error; };
struct SpecError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ParseError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };
struct DivergenceError : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace eada
