#include "soa/gzip_io.hpp"

#include <zlib.h>

#include <cstring>
#include <sstream>

#include "soa/model.hpp"

namespace soa {

namespace {

constexpr int kLevel = 6;
constexpr int kGzipWindow = 15 + 16;
constexpr std::size_t kChunk = 1 << 16;

bool has_gzip_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  unsigned char magic[2] = {0, 0};
  in.read(reinterpret_cast<char*>(magic), 2);
  return in.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
}

}  // namespace

struct LineReader::Impl {
  gzFile file = nullptr;
  std::filesystem::path path;
  std::string pending;
  std::size_t pos = 0;
  bool eof = false;

  void fill() {
    if (eof) return;
    pending.erase(0, pos);
    pos = 0;
    std::size_t old = pending.size();
    pending.resize(old + kChunk);
    int n = gzread(file, pending.data() + old, static_cast<unsigned>(kChunk));
    if (n < 0) {
      int errnum = 0;
      const char* msg = gzerror(file, &errnum);
      throw Error("CorruptArchive", path.string() + ": " + (msg ? msg : "read error"));
    }
    pending.resize(old + static_cast<std::size_t>(n));
    if (n == 0) {
      int errnum = 0;
      const char* msg = gzerror(file, &errnum);
      if (errnum != Z_OK && errnum != Z_STREAM_END)
        throw Error("CorruptArchive", path.string() + ": " + (msg ? msg : "read error"));
      eof = true;
    }
  }
};

LineReader::LineReader(const std::filesystem::path& path, bool allow_plain) : impl_(std::make_unique<Impl>()) {
  impl_->path = path;
  if (!std::filesystem::exists(path)) throw Error("IoFailure", "missing file " + path.string());
  if (!allow_plain && !has_gzip_magic(path))
    throw Error("CorruptArchive", path.string() + ": not a gzip stream");
  impl_->file = gzopen(path.c_str(), "rb");
  if (!impl_->file) throw Error("IoFailure", "cannot open " + path.string());
  gzbuffer(impl_->file, kChunk);
}

LineReader::~LineReader() {
  if (impl_ && impl_->file) gzclose(impl_->file);
}

bool LineReader::next(std::string& line) {
  auto& s = *impl_;
  while (true) {
    auto nl = s.pending.find('\n', s.pos);
    if (nl != std::string::npos) {
      line.assign(s.pending, s.pos, nl - s.pos);
      s.pos = nl + 1;
      return true;
    }
    if (s.eof) {
      if (s.pos >= s.pending.size()) return false;
      line.assign(s.pending, s.pos, std::string::npos);
      s.pos = s.pending.size();
      return true;
    }
    s.fill();
  }
}

std::string read_file(const std::filesystem::path& path) {
  if (path.extension() == ".gz") {
    LineReader reader(path);
    std::string out, line;
    bool first = true;
    // Reassemble; LineReader drops the final LF distinction, which is fine for
    // line-oriented RDF.
    while (reader.next(line)) {
      if (!first) out += '\n';
      out += line;
      first = false;
    }
    if (!first) out += '\n';
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoFailure", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ByteSink::Deflater {
  z_stream zs{};
  bool ready = false;
  ~Deflater() {
    if (ready) deflateEnd(&zs);
  }
};

ByteSink::ByteSink(const std::filesystem::path& path, bool gzip) : path_(path), gzip_(gzip) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("IoFailure", "cannot open " + path.string() + " for writing");
  if (gzip_) {
    deflater_ = std::make_unique<Deflater>();
    if (deflateInit2(&deflater_->zs, kLevel, Z_DEFLATED, kGzipWindow, 8, Z_DEFAULT_STRATEGY) != Z_OK)
      throw Error("IoFailure", "deflateInit2 failed");
    deflater_->ready = true;
  }
}

ByteSink::~ByteSink() {
  if (!closed_) {
    try {
      close();
    } catch (...) {
    }
  }
}

void ByteSink::emit(const char* data, std::size_t n) {
  out_.write(data, static_cast<std::streamsize>(n));
  if (!out_) throw Error("IoFailure", "write failed on " + path_.string());
  out_bytes_ += n;
}

void ByteSink::deflate_chunk(std::string_view bytes, int flush) {
  auto& zs = deflater_->zs;
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  char buf[kChunk];
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof(buf);
    int rc = deflate(&zs, flush);
    if (rc == Z_STREAM_ERROR) throw Error("IoFailure", "deflate failed on " + path_.string());
    emit(buf, sizeof(buf) - zs.avail_out);
  } while (zs.avail_out == 0);
}

void ByteSink::write(std::string_view bytes) {
  raw_bytes_ += bytes.size();
  if (!gzip_) {
    emit(bytes.data(), bytes.size());
    return;
  }
  deflate_chunk(bytes, Z_NO_FLUSH);
}

void ByteSink::close() {
  if (closed_) return;
  closed_ = true;
  if (gzip_) deflate_chunk({}, Z_FINISH);
  out_.close();
  if (!out_) throw Error("IoFailure", "close failed on " + path_.string());
}

std::string gzip_compress(std::string_view bytes) {
  z_stream zs{};
  if (deflateInit2(&zs, kLevel, Z_DEFLATED, kGzipWindow, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw Error("IoFailure", "deflateInit2 failed");
  std::string out;
  out.resize(deflateBound(&zs, static_cast<uLong>(bytes.size())) + 32);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error("IoFailure", "deflate did not finish");
  out.resize(zs.total_out);
  return out;
}

std::string gzip_decompress(std::string_view bytes) {
  z_stream zs{};
  if (inflateInit2(&zs, kGzipWindow) != Z_OK) throw Error("IoFailure", "inflateInit2 failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  std::string out;
  char buf[kChunk];
  int rc;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof(buf);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error("CorruptArchive", "inflate failed");
    }
    out.append(buf, sizeof(buf) - zs.avail_out);
  } while (rc != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

}  // namespace soa
