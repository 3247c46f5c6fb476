#include "cls/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "cls/debugger.hpp"

namespace cls::cli {

namespace {

void writeFile(const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write '" + path.string() + "'");
    file << content;
}

std::string dump(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    if (options.format != "json" && options.format != "dot") {
        err << "error: unknown format '" << options.format << "' (expected json or dot)\n";
        return InputError;
    }

    Repository repository;
    Type target;
    try {
        repository = loadRepositoryFile(options.repo);
        target = parseType(options.target);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
    for (const auto& w : repository.warnings()) err << "warning: " << w << "\n";

    InhabitOptions inhabitOptions;
    if (options.timeoutSeconds) {
        inhabitOptions.deadline = std::chrono::steady_clock::now() +
                                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                      std::chrono::duration<double>(*options.timeoutSeconds));
    }

    DebugTrace trace;
    try {
        trace = inhabit(repository, target, inhabitOptions);
    } catch (const InhabitationTimeout& e) {
        err << "error: " << e.what() << "\n";
        return Timeout;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }

    const auto sources = sourcesOf(repository);
    std::vector<Term> terms;
    if (options.enumerate) terms = enumerateTerms(trace.pruned, trace.start(), *options.enumerate);

    if (options.outDir) {
        try {
            const std::filesystem::path dir(*options.outDir);
            std::filesystem::create_directories(dir);
            writeFile(dir / "grammar.json", dump(grammarToJson(trace.pruned)));
            writeFile(dir / "trace.json", dump(traceToJson(trace)));
            writeFile(dir / "reports.json", dump(reportToJson(computeReport(trace))));
            if (options.format == "json") {
                writeFile(dir / "graph.json", dump(resultDocument(trace, options.includeUnproductive, sources)));
            } else {
                writeFile(dir / "graph.dot", resultDot(trace, options.includeUnproductive, sources));
            }
            if (options.enumerate) {
                std::string text;
                for (const auto& t : terms) text += t.text() + "\n";
                writeFile(dir / "terms.txt", text);
            }
            if (options.steps) {
                for (std::size_t k = 0; k <= trace.steps.size(); ++k) {
                    Hypergraph h = stepGraph(trace, k, sources);
                    if (!options.includeUnproductive) h = filterUnproductive(h);
                    const std::string name = "step-" + std::to_string(k) + "." + options.format;
                    writeFile(dir / name, options.format == "json" ? dump(toJson(h)) : toDot(h));
                }
            }
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return InputError;
        }
    } else {
        out << dump(grammarToJson(trace.pruned));
        for (const auto& t : terms) out << t.text() << "\n";
    }

    if (!trace.inhabited()) {
        for (const auto& e : computeReport(trace).entries) {
            err << "uninhabited: " << e.type.text() << " (" << reasonName(e.reason) << ")\n";
        }
        return Uninhabited;
    }
    return Inhabited;
}

}  // namespace cls::cli
