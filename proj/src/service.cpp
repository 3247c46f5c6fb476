#include "cls/service.hpp"

#include <charconv>
#include <random>
#include <stdexcept>

#include "cls/debugger.hpp"
#include "httplib.h"

namespace cls::service {

namespace {

using Json = nlohmann::ordered_json;

Response json(int status, const Json& body) { return {status, body.dump()}; }

Response error(int status, const std::string& message) {
    Json body;
    body["error"] = message;
    return json(status, body);
}

std::string newSessionId() {
    static std::mutex mutex;
    static std::random_device device;
    std::lock_guard lock(mutex);
    static constexpr char digits[] = "0123456789abcdef";
    std::string id;
    for (int word = 0; word < 4; ++word) {
        auto bits = static_cast<std::uint32_t>(device());
        for (int nibble = 0; nibble < 8; ++nibble) {
            id += digits[bits & 0xF];
            bits >>= 4;
        }
    }
    return id;
}

std::optional<std::size_t> parseCount(const std::string& text) {
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
    return value;
}

}  // namespace

std::shared_ptr<const DebugTrace> Session::trace(std::size_t ordinal) const {
    std::lock_guard lock(mutex_);
    return ordinal < traces_.size() ? traces_[ordinal] : nullptr;
}

std::size_t Session::add(std::shared_ptr<const DebugTrace> trace) {
    std::lock_guard lock(mutex_);
    traces_.push_back(std::move(trace));
    return traces_.size() - 1;
}

std::shared_ptr<Session> SessionStore::create(Repository repository) {
    auto session = std::make_shared<Session>();
    session->repository = std::move(repository);
    session->createdAt = std::chrono::system_clock::now();
    std::lock_guard lock(mutex_);
    do {
        session->id = newSessionId();
    } while (sessions_.contains(session->id));
    order_.push_front(session->id);
    sessions_.emplace(session->id, Slot{session, order_.begin()});
    while (sessions_.size() > capacity_) {
        sessions_.erase(order_.back());
        order_.pop_back();
    }
    return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    order_.splice(order_.begin(), order_, it->second.position);
    return it->second.session;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

Api::Api(Config config) : config_(std::move(config)), sessions_(config_.maxSessions) {}

Response Api::createSession(const std::string& body) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        return error(400, std::string("malformed JSON: ") + e.what());
    }
    try {
        auto session = sessions_.create(loadRepository(doc));
        Json out;
        out["id"] = session->id;
        out["combinators"] = session->repository.combinators().size();
        out["warnings"] = session->repository.warnings();
        return json(201, out);
    } catch (const ValidationError& e) {
        Json out;
        out["error"] = "invalid repository";
        out["messages"] = e.messages();
        return json(400, out);
    }
}

Response Api::requestInhabitation(const std::string& sessionId, const std::string& body) {
    auto session = sessions_.find(sessionId);
    if (!session) return error(404, "unknown session '" + sessionId + "'");
    std::string targetText;
    try {
        targetText = nlohmann::json::parse(body).at("target").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        return error(400, "request body must be {\"target\": <type>}");
    }
    try {
        Type target = parseType(targetText);
        InhabitOptions options;
        options.deadline = std::chrono::steady_clock::now() + config_.timeout;
        auto trace = std::make_shared<const DebugTrace>(inhabit(session->repository, target, options));
        Json out;
        out["ordinal"] = session->add(trace);
        out["inhabited"] = trace->inhabited();
        out["steps"] = trace->steps.size();
        return json(201, out);
    } catch (const InhabitationTimeout& e) {
        return error(503, e.what());
    } catch (const Error& e) {
        return error(400, e.what());
    }
}

namespace {

struct Lookup {
    std::shared_ptr<Session> session;
    std::shared_ptr<const DebugTrace> trace;
    std::optional<Response> failure;
};

Lookup lookup(SessionStore& sessions, const std::string& sessionId, std::size_t ordinal) {
    Lookup l;
    l.session = sessions.find(sessionId);
    if (!l.session) {
        l.failure = error(404, "unknown session '" + sessionId + "'");
        return l;
    }
    l.trace = l.session->trace(ordinal);
    if (!l.trace) l.failure = error(404, "unknown request " + std::to_string(ordinal) + " in session");
    return l;
}

}  // namespace

Response Api::result(const std::string& sessionId, std::size_t ordinal, bool includeUnproductive) {
    auto [session, trace, failure] = lookup(sessions_, sessionId, ordinal);
    if (failure) return *failure;
    return json(200, resultDocument(*trace, includeUnproductive, sourcesOf(session->repository)));
}

Response Api::step(const std::string& sessionId, std::size_t ordinal, std::size_t step) {
    auto [session, trace, failure] = lookup(sessions_, sessionId, ordinal);
    if (failure) return *failure;
    if (step > trace->steps.size()) {
        return error(416, "step " + std::to_string(step) + " is out of range 0.." + std::to_string(trace->steps.size()));
    }
    return json(200, toJson(stepGraph(*trace, step, sourcesOf(session->repository))));
}

Response Api::reports(const std::string& sessionId, std::size_t ordinal) {
    auto [session, trace, failure] = lookup(sessions_, sessionId, ordinal);
    if (failure) return *failure;
    return json(200, reportToJson(computeReport(*trace)));
}

Response Api::terms(const std::string& sessionId, std::size_t ordinal, std::optional<std::string> max) {
    auto [session, trace, failure] = lookup(sessions_, sessionId, ordinal);
    if (failure) return *failure;
    std::size_t count = 10;
    if (max) {
        auto parsed = parseCount(*max);
        if (!parsed) return error(400, "'max' must be a nonnegative integer");
        count = *parsed;
    }
    if (count > config_.maxTerms) {
        return error(400, "'max' exceeds the server cap of " + std::to_string(config_.maxTerms));
    }
    return json(200, termsToJson(enumerateTerms(trace->pruned, trace->start(), count)));
}

Response Api::repository(const std::string& sessionId) {
    auto session = sessions_.find(sessionId);
    if (!session) return error(404, "unknown session '" + sessionId + "'");
    return json(200, printRepository(session->repository));
}

void mountRoutes(httplib::Server& server, Api& api) {
    auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    auto ordinalOf = [](const httplib::Request& req, std::size_t index) {
        return parseCount(req.matches[index].str()).value_or(static_cast<std::size_t>(-1));
    };

    server.Post("/sessions", [&api, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, api.createSession(req.body));
    });
    server.Post(R"(/sessions/([0-9a-f]+)/requests)", [&api, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, api.requestInhabitation(req.matches[1].str(), req.body));
    });
    server.Get(R"(/sessions/([0-9a-f]+)/requests/(\d+)/result)",
               [&api, reply, ordinalOf](const httplib::Request& req, httplib::Response& res) {
                   bool unproductive = true;
                   if (req.has_param("unproductive")) {
                       const auto v = req.get_param_value("unproductive");
                       if (v != "true" && v != "false") {
                           reply(res, error(400, "'unproductive' must be true or false"));
                           return;
                       }
                       unproductive = v == "true";
                   }
                   reply(res, api.result(req.matches[1].str(), ordinalOf(req, 2), unproductive));
               });
    server.Get(R"(/sessions/([0-9a-f]+)/requests/(\d+)/steps/(\d+))",
               [&api, reply, ordinalOf](const httplib::Request& req, httplib::Response& res) {
                   reply(res, api.step(req.matches[1].str(), ordinalOf(req, 2), ordinalOf(req, 3)));
               });
    server.Get(R"(/sessions/([0-9a-f]+)/requests/(\d+)/reports)",
               [&api, reply, ordinalOf](const httplib::Request& req, httplib::Response& res) {
                   reply(res, api.reports(req.matches[1].str(), ordinalOf(req, 2)));
               });
    server.Get(R"(/sessions/([0-9a-f]+)/requests/(\d+)/terms)",
               [&api, reply, ordinalOf](const httplib::Request& req, httplib::Response& res) {
                   std::optional<std::string> max;
                   if (req.has_param("max")) max = req.get_param_value("max");
                   reply(res, api.terms(req.matches[1].str(), ordinalOf(req, 2), max));
               });
    server.Get(R"(/sessions/([0-9a-f]+)/repository)", [&api, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, api.repository(req.matches[1].str()));
    });
    if (api.config().staticDir) server.set_mount_point("/", *api.config().staticDir);
}

Server::Server(Config config) : api_(std::move(config)), http_(std::make_unique<httplib::Server>()) {
    mountRoutes(*http_, api_);
}

Server::~Server() { stop(); }

int Server::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = http_->bind_to_any_port(host);
    } else if (!http_->bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return bound;
}

bool Server::listen(const std::string& host, int port) { return http_->listen(host, port); }

void Server::stop() {
    http_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace cls::service
