#pragma once

#include "dwall/numerics.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dwall::cli {

enum class Subcommand { eta, wall, homogeneous_wall, split_scan, spectrum, bifurcation, limit_nu0, limit_profile, energy };

const char* to_string(Subcommand s);
std::optional<Subcommand> parse_subcommand(std::string_view name);

class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::eta;
    double eps = 0.1;
    double gamma = 3.0;
    double mu = 0.2;
    double alpha = 0.5;
    std::optional<double> alpha_min; // unset: scans use 0.3, root finding searches
    std::optional<double> alpha_max;
    int steps = 21;
    std::vector<double> eps_list{0.05, 0.1, 0.15};
    int grid_n = 2049;
    std::optional<double> domain_length; // unset: subcommand default
    double tol = 1e-9;
    int max_iter = 200000;
    std::string out_path; // empty: <subcommand>.csv
    std::string coordinate = "xi";
    std::string operator_kind = "L_gamma";
    std::string bc = "dirichlet";
    int count = 5;
    std::string state = "symmetric";
    bool find_alpha = false;
    bool predicted = false;

    // 3 for trap problems, 10 for the xi-form limit problem, 1 for the
    // x-form, 20 for the homogeneous wall (half-width).
    double domain() const;
    std::string output() const;
};

// Applies one `key = value` setting; keys use the long flag names (dashes or
// underscores). Throws UsageError naming the key.
void set_option(RunConfig& cfg, std::string_view key, std::string_view value);

// Range checks; throws UsageError naming the offending field.
void validate(const RunConfig& cfg);

// Reads `key = value` lines with `#` comments on top of base.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
RunConfig parse_config(std::istream& in, RunConfig base = {});

// Exit status 0 on success, 2 on usage error, 3 on solver non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

// Locale-independent, 17 significant digits.
std::string format_number(double v);

} // namespace dwall::cli
