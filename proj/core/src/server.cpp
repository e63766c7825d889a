#include "fueldisp/server.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

namespace fueldisp::bridge {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxQueuedFrames = 512;
constexpr std::string_view kHealthBody = R"({"status":"ok","service":"fueldisp-bridge"})";

class WsSession;

/// Shared between network threads and the driver thread.
class Hub {
public:
    void join(const std::shared_ptr<WsSession>& s);
    void leave(const WsSession* s);
    void broadcast(std::shared_ptr<const std::string> frame);

    void post_message(ClientMessage msg) {
        std::lock_guard lock(inbox_mutex_);
        inbox_.push_back(std::move(msg));
    }

    std::deque<ClientMessage> take_messages() {
        std::lock_guard lock(inbox_mutex_);
        return std::exchange(inbox_, {});
    }

private:
    std::mutex sessions_mutex_;
    std::vector<std::weak_ptr<WsSession>> sessions_;
    std::shared_ptr<const std::string> latest_;

    std::mutex inbox_mutex_;
    std::deque<ClientMessage> inbox_;
};

class WsSession : public std::enable_shared_from_this<WsSession> {
public:
    WsSession(tcp::socket&& socket, Hub& hub) : ws_(std::move(socket)), hub_(hub) {}

    void run(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
    }

    /// Thread-safe: hops onto the session's strand.
    void send(std::shared_ptr<const std::string> frame) {
        net::post(ws_.get_executor(), [self = shared_from_this(), frame = std::move(frame)]() mutable {
            if (self->queue_.size() >= kMaxQueuedFrames) {
                return;  // slow reader; it will resync from a later snapshot
            }
            self->queue_.push_back(std::move(frame));
            if (self->queue_.size() == 1) {
                self->do_write();
            }
        });
    }

private:
    void on_accept(beast::error_code ec) {
        if (ec) return;
        hub_.join(shared_from_this());
        do_read();
    }

    void do_read() {
        ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) {
            hub_.leave(this);
            return;
        }
        const std::string text = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());
        try {
            hub_.post_message(parse_client_message(text));
        } catch (const ProtocolError& e) {
            send(std::make_shared<const std::string>(encode_error(e.what())));
        }
        do_read();
    }

    void do_write() {
        ws_.text(true);
        ws_.async_write(net::buffer(*queue_.front()),
                        beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, std::size_t) {
        if (ec) {
            hub_.leave(this);
            return;
        }
        queue_.pop_front();
        if (!queue_.empty()) do_write();
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::shared_ptr<const std::string>> queue_;
    Hub& hub_;
};

void Hub::join(const std::shared_ptr<WsSession>& s) {
    std::shared_ptr<const std::string> latest;
    {
        std::lock_guard lock(sessions_mutex_);
        sessions_.push_back(s);
        latest = latest_;
    }
    if (latest) s->send(std::move(latest));
}

void Hub::leave(const WsSession* s) {
    std::lock_guard lock(sessions_mutex_);
    std::erase_if(sessions_, [s](const std::weak_ptr<WsSession>& w) {
        auto p = w.lock();
        return !p || p.get() == s;
    });
}

void Hub::broadcast(std::shared_ptr<const std::string> frame) {
    std::vector<std::shared_ptr<WsSession>> targets;
    {
        std::lock_guard lock(sessions_mutex_);
        latest_ = frame;
        for (const auto& w : sessions_) {
            if (auto p = w.lock()) targets.push_back(std::move(p));
        }
    }
    for (auto& t : targets) t->send(frame);
}

/// Reads one request; answers /health or hands the socket to a WsSession.
class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket&& socket, Hub& hub) : stream_(std::move(socket)), hub_(hub) {}

    void run() {
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
    }

private:
    void on_read(beast::error_code ec, std::size_t) {
        if (ec) return;
        if (websocket::is_upgrade(req_)) {
            stream_.expires_never();
            std::make_shared<WsSession>(stream_.release_socket(), hub_)->run(std::move(req_));
            return;
        }
        auto res = std::make_shared<http::response<http::string_body>>();
        res->version(req_.version());
        res->set(http::field::server, "fueldisp-bridge");
        res->keep_alive(false);
        if (req_.method() == http::verb::get && req_.target() == "/health") {
            res->result(http::status::ok);
            res->set(http::field::content_type, "application/json");
            res->body() = std::string(kHealthBody);
        } else {
            res->result(http::status::not_found);
            res->set(http::field::content_type, "text/plain");
            res->body() = "not found\n";
        }
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
            beast::error_code ignored;
            self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        });
    }

    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
    Hub& hub_;
};

}  // namespace

struct Server::Impl {
    explicit Impl(ServerConfig cfg) : config(std::move(cfg)), acceptor(ioc), driver(config.driver) {
        const tcp::endpoint endpoint(net::ip::make_address(config.address), config.port);
        acceptor.open(endpoint.protocol());
        acceptor.set_option(net::socket_base::reuse_address(true));
        acceptor.bind(endpoint);
        acceptor.listen(net::socket_base::max_listen_connections);
    }

    void do_accept() {
        acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) return;  // acceptor closed
            std::make_shared<HttpSession>(std::move(socket), hub)->run();
            do_accept();
        });
    }

    void drive() {
        using Clock = std::chrono::steady_clock;
        BroadcastPolicy policy;
        auto next = Clock::now();
        while (!stopping.load()) {
            for (const auto& msg : hub.take_messages()) {
                driver.apply(msg);
            }
            const StateSnapshot snap = driver.tick();
            const auto now = Clock::now();
            if (policy.should_send(snap, now)) {
                hub.broadcast(std::make_shared<const std::string>(encode_snapshot(snap)));
            }
            next += driver.wall_period();
            if (next < now - std::chrono::seconds(1)) {
                next = now;  // fell far behind; do not burst to catch up
            }
            std::this_thread::sleep_until(next);
        }
    }

    ServerConfig config;
    net::io_context ioc;
    tcp::acceptor acceptor;
    Hub hub;
    Driver driver;
    std::atomic<bool> stopping{false};
    std::thread net_thread;
    std::thread driver_thread;
    std::mutex done_mutex;
    std::condition_variable done_cv;
    bool done = false;
};

Server::Server(ServerConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() {
    impl_->do_accept();
    impl_->net_thread = std::thread([this] { impl_->ioc.run(); });
    impl_->driver_thread = std::thread([this] { impl_->drive(); });
}

void Server::wait() {
    std::unique_lock lock(impl_->done_mutex);
    impl_->done_cv.wait(lock, [this] { return impl_->done; });
}

void Server::stop() {
    if (impl_->stopping.exchange(true)) return;
    net::post(impl_->ioc, [this] {
        beast::error_code ignored;
        impl_->acceptor.close(ignored);
    });
    impl_->ioc.stop();
    if (impl_->net_thread.joinable()) impl_->net_thread.join();
    if (impl_->driver_thread.joinable()) impl_->driver_thread.join();
    {
        std::lock_guard lock(impl_->done_mutex);
        impl_->done = true;
    }
    impl_->done_cv.notify_all();
}

}  // namespace fueldisp::bridge
