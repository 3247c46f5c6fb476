#include <iostream>

#include "CLI11.hpp"
#include "cls/service.hpp"

int main(int argc, char** argv) {
    CLI::App app{"HTTP debugger service for combinatory logic synthesis"};
    int port = 9000;
    std::string host = "0.0.0.0";
    double timeoutSeconds = 30;
    cls::service::Config config;
    std::string staticDir;
    app.add_option("--port", port, "Listen port")->check(CLI::Range(0, 65535));
    app.add_option("--host", host, "Listen address");
    app.add_option("--timeout-seconds", timeoutSeconds, "Per-request inhabitation timeout")->check(CLI::PositiveNumber);
    app.add_option("--static-dir", staticDir, "Directory with the web UI bundle")->check(CLI::ExistingDirectory);
    app.add_option("--max-sessions", config.maxSessions, "Sessions kept before evicting the least recently used");
    app.add_option("--max-terms", config.maxTerms, "Largest accepted 'max' for term enumeration");
    CLI11_PARSE(app, argc, argv);

    config.timeout = std::chrono::milliseconds(static_cast<long long>(timeoutSeconds * 1000));
    if (!staticDir.empty()) config.staticDir = staticDir;

    cls::service::Server server(config);
    std::cout << "listening on " << host << ":" << port << std::endl;
    if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
    }
    return 0;
}
