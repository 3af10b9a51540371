#pragma once

#include <istream>
#include <memory>
#include <streambuf>
#include <string>

namespace lola {

/// Blocking read streambuf over a connected socket (or any readable fd).
class FdStreambuf : public std::streambuf {
public:
    explicit FdStreambuf(int fd);
    ~FdStreambuf() override;

    FdStreambuf(const FdStreambuf&) = delete;
    FdStreambuf& operator=(const FdStreambuf&) = delete;

protected:
    int_type underflow() override;

private:
    int fd_;
    char buffer_[4096];
};

/// Bind `addr` ("host:port", ":port", or "port"), accept one connection,
/// and return a line-oriented input stream over it. Blocks until a peer
/// connects. Throws IoError on any socket failure.
class SocketSource {
public:
    explicit SocketSource(const std::string& addr);
    ~SocketSource();

    std::istream& stream() { return *stream_; }
    uint16_t port() const { return port_; }

private:
    int listen_fd_ = -1;
    int conn_fd_ = -1;
    uint16_t port_ = 0;
    std::unique_ptr<FdStreambuf> buf_;
    std::unique_ptr<std::istream> stream_;
};

} // namespace lola
