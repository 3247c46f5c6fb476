#ifndef CLS_CLI_HPP
#define CLS_CLI_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

namespace cls::cli {

enum ExitCode : int { Inhabited = 0, Uninhabited = 1, InputError = 2, Timeout = 3 };

struct RunOptions {
    std::string repo;
    std::string target;
    std::optional<std::string> outDir;
    std::string format = "json";  // json | dot
    std::optional<std::size_t> enumerate;
    bool steps = false;
    bool includeUnproductive = true;
    std::optional<double> timeoutSeconds;
};

/*
 * Runs one inhabitation request. With an output directory, writes
 * grammar.json, graph.<format>, trace.json, reports.json, and optionally
 * terms.txt and step-<k>.<format>; otherwise prints the pruned grammar and
 * terms to `out`.
 */
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace cls::cli

#endif
