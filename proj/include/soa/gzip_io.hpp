#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>

namespace soa {

/// Streaming line reader over a gzip file (multi-member aware) or, when
/// `allow_plain` is set, over an uncompressed file. Throws
/// Error("CorruptArchive") on a damaged or truncated stream.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path, bool allow_plain = false);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  /// Reads the next line without its terminating LF. Returns false at EOF.
  bool next(std::string& line);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reads a whole file, transparently gunzipping names ending in ".gz".
std::string read_file(const std::filesystem::path& path);

/// Byte sink writing either plain bytes or a single-member gzip stream.
/// The gzip parameters are pinned (level 6, no file name, mtime 0) so equal
/// input always yields equal output bytes.
class ByteSink {
 public:
  ByteSink(const std::filesystem::path& path, bool gzip);
  ~ByteSink();
  ByteSink(const ByteSink&) = delete;
  ByteSink& operator=(const ByteSink&) = delete;

  void write(std::string_view bytes);
  void close();

  std::uint64_t uncompressed_bytes() const noexcept { return raw_bytes_; }
  std::uint64_t written_bytes() const noexcept { return out_bytes_; }

 private:
  void emit(const char* data, std::size_t n);
  void deflate_chunk(std::string_view bytes, int flush);

  std::filesystem::path path_;
  std::ofstream out_;
  bool gzip_;
  bool closed_ = false;
  struct Deflater;
  std::unique_ptr<Deflater> deflater_;
  std::uint64_t raw_bytes_ = 0;
  std::uint64_t out_bytes_ = 0;
};

/// In-memory gzip with the same pinned parameters as ByteSink.
std::string gzip_compress(std::string_view bytes);
std::string gzip_decompress(std::string_view bytes);

}  // namespace soa
