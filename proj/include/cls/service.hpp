#ifndef CLS_SERVICE_HPP
#define CLS_SERVICE_HPP

#include <chrono>
#include <cstddef>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cls/inhabitation.hpp"
#include "cls/repository.hpp"

namespace httplib {
class Server;
}

namespace cls::service {

struct Config {
    std::chrono::milliseconds timeout{30000};
    std::size_t maxSessions = 64;
    std::size_t maxTerms = 1000;
    std::optional<std::string> staticDir;
};

struct Response {
    int status = 200;
    std::string body;
};

struct Session {
    std::string id;
    Repository repository;
    std::chrono::system_clock::time_point createdAt;

    std::shared_ptr<const DebugTrace> trace(std::size_t ordinal) const;
    std::size_t add(std::shared_ptr<const DebugTrace> trace);

private:
    mutable std::mutex mutex_;
    std::vector<std::shared_ptr<const DebugTrace>> traces_;
};

// In-memory sessions with least-recently-used eviction.
class SessionStore {
public:
    explicit SessionStore(std::size_t capacity) : capacity_(capacity) {}

    std::shared_ptr<Session> create(Repository repository);
    std::shared_ptr<Session> find(const std::string& id);
    std::size_t size() const;

private:
    using Order = std::list<std::string>;
    struct Slot {
        std::shared_ptr<Session> session;
        Order::iterator position;
    };

    std::size_t capacity_;
    mutable std::mutex mutex_;
    Order order_;  // front = most recently used
    std::map<std::string, Slot> sessions_;
};

/*
 * Transport-independent handlers for the debugger API. Bodies are JSON;
 * errors are {"error": ...} with an HTTP status.
 */
class Api {
public:
    explicit Api(Config config = {});

    Response createSession(const std::string& body);
    Response requestInhabitation(const std::string& sessionId, const std::string& body);
    Response result(const std::string& sessionId, std::size_t ordinal, bool includeUnproductive);
    Response step(const std::string& sessionId, std::size_t ordinal, std::size_t step);
    Response reports(const std::string& sessionId, std::size_t ordinal);
    Response terms(const std::string& sessionId, std::size_t ordinal, std::optional<std::string> max);
    Response repository(const std::string& sessionId);

    const Config& config() const { return config_; }

private:
    Config config_;
    SessionStore sessions_;
};

void mountRoutes(httplib::Server& server, Api& api);

// Owns an httplib server running on a background thread.
class Server {
public:
    explicit Server(Config config = {});
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Port 0 picks a free port. Returns the bound port.
    int start(const std::string& host, int port);
    // Blocks until stop() is called from elsewhere.
    bool listen(const std::string& host, int port);
    void stop();

private:
    Api api_;
    std::unique_ptr<httplib::Server> http_;
    std::thread thread_;
};

}  // namespace cls::service

#endif
