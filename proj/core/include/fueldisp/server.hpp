#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "fueldisp/bridge.hpp"

namespace fueldisp::bridge {

struct ServerConfig {
    std::string address = "127.0.0.1";
    /// 0 picks an ephemeral port; see Server::port().
    std::uint16_t port = 8765;
    DriverConfig driver;
};

/// Live bridge: one HTTP listener that serves GET /health and upgrades any
/// other request to a websocket session speaking the snapshot protocol.
///
/// A single driver thread owns the simulation. Sessions only push decoded
/// client messages into its inbox and receive encoded snapshots.
class Server {
public:
    /// Binds immediately; throws std::system_error if the port is taken.
    explicit Server(ServerConfig config);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    std::uint16_t port() const;

    /// Starts the network and driver threads and returns.
    void start();
    /// Blocks until stop() is called from another thread or a signal handler.
    void wait();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace fueldisp::bridge
