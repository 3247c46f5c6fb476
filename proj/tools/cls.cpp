#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cls/cli.hpp"
#include "cls/labyrinth.hpp"

namespace {

cls::Cell parseCell(const std::string& text) {
    std::istringstream in(text);
    std::size_t col = 0;
    std::size_t row = 0;
    char comma = 0;
    if (!(in >> col >> comma >> row) || comma != ',' || !in.eof()) {
        throw CLI::ValidationError("cell", "expected COL,ROW but got '" + text + "'");
    }
    return {col, row};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatory logic synthesis with intersection types"};
    app.require_subcommand(1);

    cls::cli::RunOptions run;
    double timeout = 0;
    auto* runCmd = app.add_subcommand("run", "Inhabit a target type and write grammar, graphs, trace and reports");
    runCmd->add_option("--repo", run.repo, "Repository JSON file")->required();
    runCmd->add_option("--target", run.target, "Target type, e.g. \"Pos(1, 0)\"")->required();
    runCmd->add_option("--out", run.outDir, "Output directory (stdout when omitted)");
    runCmd->add_option("--format", run.format, "Graph format")->check(CLI::IsMember({"json", "dot"}));
    runCmd->add_option("--enumerate", run.enumerate, "Write the first N terms to terms.txt");
    runCmd->add_flag("--steps", run.steps, "Write one graph per construction step");
    bool noUnproductive = false;
    runCmd->add_flag("--no-unproductive", noUnproductive, "Hide unproductive cycles in graphs");
    auto* timeoutOpt = runCmd->add_option("--timeout-seconds", timeout, "Abort after this many seconds")
                           ->check(CLI::PositiveNumber);

    cls::Labyrinth lab;
    std::vector<std::string> walls;
    std::string start = "0,0";
    std::string output;
    auto* genCmd = app.add_subcommand("gen-labyrinth", "Write a labyrinth repository document");
    genCmd->add_option("--rows", lab.rows, "Number of rows")->required();
    genCmd->add_option("--cols", lab.cols, "Number of columns")->required();
    genCmd->add_option("--wall", walls, "Wall cell COL,ROW (repeatable)");
    genCmd->add_option("--start", start, "Start cell COL,ROW");
    genCmd->add_option("--output", output, "Output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cls::cli::InputError;
    }

    if (*runCmd) {
        run.includeUnproductive = !noUnproductive;
        if (*timeoutOpt) run.timeoutSeconds = timeout;
        return cls::cli::run(run, std::cout, std::cerr);
    }

    try {
        for (const auto& w : walls) lab.walls.push_back(parseCell(w));
        lab.start = parseCell(start);
        const std::string doc = cls::genLabyrinth(lab).dump(2) + "\n";
        if (output.empty()) {
            std::cout << doc;
        } else {
            std::ofstream file(output, std::ios::binary);
            if (!file) throw cls::Error("cannot write '" + output + "'");
            file << doc;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cls::cli::InputError;
    }
    return 0;
}
