#ifndef HYPERVOLT_CLI_HPP
#define HYPERVOLT_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypervolt/laplace.hpp"

namespace hypervolt::cli {

enum class Command { solve, verify, asym, compare, catalog };
enum class Spacing { geometric, linear };
enum class Format { csv, json };

struct GridSpec {
  double t_min = 0.1;
  double t_max = 10.0;
  int points = 20;
  Spacing spacing = Spacing::geometric;

  /// Requires t_min > 0 and either points >= 2 with t_min < t_max, or
  /// points = 1 with t_min = t_max.
  void validate() const;
  std::vector<double> times() const;
};

/// "tmin:tmax:points[:geometric|linear]".  Throws InputError.
GridSpec parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::solve;
  double lambda = -0.25;
  std::string profile = "exp";
  std::optional<GridSpec> grid;        // command-specific default when empty
  std::string route;                   // inversion|resolvent|direct|all; empty = default
  InversionConfig inversion;
  std::optional<double> step;          // direct route step
  Format format = Format::csv;
  std::string out_path;                // empty = stdout
};

using Cell = std::variant<double, long, std::string>;

/// Output of one command: fixed columns, one row per record.
struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Header row, then one line per row; numbers as %.17g.
void write_csv(const Table& table, std::ostream& out);
/// {"command", "columns", "rows": [{column: value}]}.
void write_json(const Table& table, std::ostream& out);

/// Executes the command and returns its table.  Throws library errors.
Table execute(const RunConfig& cfg, std::ostream& warn);

/// Executes and writes the output; returns the exit status
/// (0 ok, 2 validation failure, 3 numerical failure).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and calls run().
int main(int argc, char** argv);

}  // namespace hypervolt::cli

#endif  // HYPERVOLT_CLI_HPP
