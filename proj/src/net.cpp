#include "lola/net.hpp"

#include "lola/diagnostics.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace lola {

FdStreambuf::FdStreambuf(int fd) : fd_(fd) { setg(buffer_, buffer_, buffer_); }

FdStreambuf::~FdStreambuf() {
    if (fd_ >= 0) ::close(fd_);
}

FdStreambuf::int_type FdStreambuf::underflow() {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    ssize_t n;
    do {
        n = ::read(fd_, buffer_, sizeof(buffer_));
    } while (n < 0 && errno == EINTR);
    if (n <= 0) return traits_type::eof();
    setg(buffer_, buffer_, buffer_ + n);
    return traits_type::to_int_type(*gptr());
}

namespace {

std::pair<std::string, uint16_t> parse_addr(const std::string& addr) {
    std::string host = "127.0.0.1";
    std::string port_str = addr;
    auto colon = addr.rfind(':');
    if (colon != std::string::npos) {
        if (colon > 0) host = addr.substr(0, colon);
        port_str = addr.substr(colon + 1);
    }
    if (host == "localhost") host = "127.0.0.1";
    int port = 0;
    try {
        port = std::stoi(port_str);
    } catch (...) {
        throw IoError("invalid listen address '" + addr + "'");
    }
    if (port < 0 || port > 65535)
        throw IoError("invalid port in listen address '" + addr + "'");
    return {host, static_cast<uint16_t>(port)};
}

} // namespace

SocketSource::SocketSource(const std::string& addr) {
    auto [host, port] = parse_addr(addr);

    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw IoError("socket(): " + std::string(strerror(errno)));

    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &sa.sin_addr) != 1) {
        ::close(listen_fd_);
        throw IoError("invalid listen host '" + host + "'");
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) < 0) {
        std::string err = strerror(errno);
        ::close(listen_fd_);
        throw IoError("bind(" + addr + "): " + err);
    }
    socklen_t len = sizeof(sa);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&sa), &len);
    port_ = ntohs(sa.sin_port);

    if (::listen(listen_fd_, 1) < 0) {
        std::string err = strerror(errno);
        ::close(listen_fd_);
        throw IoError("listen(): " + err);
    }
    conn_fd_ = ::accept(listen_fd_, nullptr, nullptr);
    if (conn_fd_ < 0) {
        std::string err = strerror(errno);
        ::close(listen_fd_);
        throw IoError("accept(): " + err);
    }
    buf_ = std::make_unique<FdStreambuf>(conn_fd_);
    conn_fd_ = -1; // owned by the streambuf now
    stream_ = std::make_unique<std::istream>(buf_.get());
}

SocketSource::~SocketSource() {
    if (listen_fd_ >= 0) ::close(listen_fd_);
    if (conn_fd_ >= 0) ::close(conn_fd_);
}

} // namespace lola
