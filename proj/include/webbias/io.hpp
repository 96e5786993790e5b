#pragma once

#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "webbias/errors.hpp"

namespace webbias {

/// Buffered line scanner over an istream. Yields string_views valid until
/// the next call. Strips trailing '\r'.
class LineReader {
 public:
  explicit LineReader(std::istream& in, std::size_t buf_size = 1 << 20)
      : in_(in), buf_(buf_size, '\0') {}

  bool next(std::string_view& line) {
    for (;;) {
      const char* nl = static_cast<const char*>(
          std::memchr(buf_.data() + pos_, '\n', end_ - pos_));
      if (nl != nullptr) {
        std::size_t len = static_cast<std::size_t>(nl - (buf_.data() + pos_));
        line = std::string_view(buf_.data() + pos_, len);
        pos_ += len + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return true;
      }
      if (eof_) {
        if (pos_ < end_) {
          line = std::string_view(buf_.data() + pos_, end_ - pos_);
          pos_ = end_;
          if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
          return true;
        }
        return false;
      }
      refill();
    }
  }

 private:
  void refill() {
    // move the unconsumed tail to the front, then read more
    std::size_t tail = end_ - pos_;
    if (tail > 0 && pos_ > 0) std::memmove(buf_.data(), buf_.data() + pos_, tail);
    pos_ = 0;
    end_ = tail;
    if (end_ == buf_.size()) buf_.resize(buf_.size() * 2);  // line longer than buffer
    in_.read(buf_.data() + end_, static_cast<std::streamsize>(buf_.size() - end_));
    std::size_t got = static_cast<std::size_t>(in_.gcount());
    end_ += got;
    if (got == 0) eof_ = true;
  }

  std::istream& in_;
  std::string buf_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  bool eof_ = false;
};

/// streambuf that inflates a gzip file via zlib.
class GzipInputBuf : public std::streambuf {
 public:
  explicit GzipInputBuf(const std::string& path) {
    file_ = gzopen(path.c_str(), "rb");
    if (file_ == nullptr) throw InputError("cannot open gzip file: " + path);
    buf_.resize(1 << 16);
  }
  ~GzipInputBuf() override {
    if (file_ != nullptr) gzclose(file_);
  }
  GzipInputBuf(const GzipInputBuf&) = delete;
  GzipInputBuf& operator=(const GzipInputBuf&) = delete;

 protected:
  int_type underflow() override {
    int n = gzread(file_, buf_.data(), static_cast<unsigned>(buf_.size()));
    if (n <= 0) return traits_type::eof();
    setg(buf_.data(), buf_.data(), buf_.data() + n);
    return traits_type::to_int_type(*gptr());
  }

 private:
  gzFile file_ = nullptr;
  std::vector<char> buf_;
};

class GzipInputStream : public std::istream {
 public:
  explicit GzipInputStream(const std::string& path) : std::istream(nullptr), buf_(path) {
    rdbuf(&buf_);
  }

 private:
  GzipInputBuf buf_;
};

/// Opens a text input; ".gz" paths are transparently decompressed.
inline std::unique_ptr<std::istream> open_input(const std::string& path) {
  if (path.size() > 3 && path.substr(path.size() - 3) == ".gz")
    return std::make_unique<GzipInputStream>(path);
  auto f = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!f->is_open()) throw InputError("cannot open file: " + path);
  return f;
}

}  // namespace webbias
