#include "fastkassim/ingest.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <openssl/evp.h>

#include "fastkassim/error.hpp"

namespace fastkassim {

namespace {

constexpr std::array<std::string_view, 26> kAbbreviations = {
    "Mr", "Mrs", "Ms", "Dr", "Prof", "Sr", "Jr", "St", "Mt", "vs", "etc", "e.g", "i.e", "cf",
    "Inc", "Ltd", "Co", "Corp", "No", "Fig", "Gen", "Gov", "Rev", "U.S", "U.K", "approx"};

constexpr std::array<std::string_view, 6> kClosers = {"\"", "'", ")", "]", "\xE2\x80\x9D", "\xE2\x80\x99"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool guarded_period(std::string_view text, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !is_space(text[start - 1])) --start;
  std::string_view word = text.substr(start, dot - start);
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'')) word.remove_prefix(1);
  if (word.size() == 1 && word[0] >= 'A' && word[0] <= 'Z') return true;
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::IoError, "sha256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

// Runs cmd under /bin/sh; returns captured stdout. Throws on launch failure or
// non-zero exit.
std::string run_filter(const std::string& cmd, const std::string& input) {
  int in_pair[2];
  int out_pipe[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_pair) != 0)
    throw Error(ErrorCode::ParserLaunchFailure, std::string("socketpair: ") + std::strerror(errno));
  Fd in_parent(in_pair[0]), in_child(in_pair[1]);
  if (::pipe2(out_pipe, O_CLOEXEC) != 0)
    throw Error(ErrorCode::ParserLaunchFailure, std::string("pipe: ") + std::strerror(errno));
  Fd out_read(out_pipe[0]), out_write(out_pipe[1]);

  pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorCode::ParserLaunchFailure, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_child.get(), STDIN_FILENO);
    ::dup2(out_write.get(), STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  in_child.reset();
  out_write.reset();

  std::string output;
  std::size_t written = 0;
  if (input.empty()) ::shutdown(in_parent.get(), SHUT_WR);
  bool writing = !input.empty();
  std::array<char, 65536> buf{};
  while (true) {
    pollfd fds[2];
    nfds_t nfds = 0;
    fds[nfds++] = {out_read.get(), POLLIN, 0};
    if (writing) fds[nfds++] = {in_parent.get(), POLLOUT, 0};
    if (::poll(fds, nfds, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (writing && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t n = ::send(in_parent.get(), input.data() + written, input.size() - written, MSG_NOSIGNAL | MSG_DONTWAIT);
      if (n > 0) written += static_cast<std::size_t>(n);
      if (n < 0 && errno != EAGAIN && errno != EINTR) written = input.size();  // reader went away
      if (written == input.size()) {
        ::shutdown(in_parent.get(), SHUT_WR);
        writing = false;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      ssize_t n = ::read(out_read.get(), buf.data(), buf.size());
      if (n > 0) {
        output.append(buf.data(), static_cast<std::size_t>(n));
      } else if (n == 0 || (errno != EINTR && errno != EAGAIN)) {
        break;
      }
    }
  }

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw Error(ErrorCode::ParserLaunchFailure, "parser command could not be started: " + cmd);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw Error(ErrorCode::ParserLaunchFailure, "parser command failed with status " + std::to_string(status) + ": " + cmd);
  return output;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

std::vector<std::string> segment(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && (text[end] == '.' || text[end] == '!' || text[end] == '?')) ++end;
    const bool single_period = c == '.' && end == i + 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (auto closer : kClosers) {
        if (text.substr(end, closer.size()) == closer) {
          end += closer.size();
          grew = true;
        }
      }
    }
    const bool at_break = end == text.size() || is_space(text[end]);
    if (at_break && !(single_period && guarded_period(text, i))) {
      auto sentence = trim(text.substr(start, end - start));
      if (!sentence.empty()) out.emplace_back(sentence);
      start = end;
    }
    i = end;
  }
  auto tail = trim(text.substr(start));
  if (!tail.empty()) out.emplace_back(tail);
  return out;
}

std::vector<ParseTree> parse_external(std::span<const std::string> sentences, const std::string& parser_cmd) {
  if (sentences.empty()) return {};
  if (parser_cmd.empty()) throw Error(ErrorCode::ParserLaunchFailure, "no parser command configured");

  std::string input;
  for (const auto& s : sentences) {
    std::string line = s;
    std::replace(line.begin(), line.end(), '\n', ' ');
    std::replace(line.begin(), line.end(), '\r', ' ');
    input += line;
    input += '\n';
  }
  const auto lines = split_lines(run_filter(parser_cmd, input));
  if (lines.size() != sentences.size())
    throw Error(ErrorCode::ParserOutputMismatch, "parser returned " + std::to_string(lines.size()) + " lines for " +
                                                     std::to_string(sentences.size()) + " sentences");
  std::vector<ParseTree> trees;
  trees.reserve(lines.size());
  for (std::size_t k = 0; k < lines.size(); ++k) {
    try {
      trees.push_back(read_bracketed(lines[k]));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedTree, "parser output line " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return trees;
}

std::string default_parser_cmd() {
  const char* env = std::getenv("FASTKASSIM_PARSER_CMD");
  return env ? std::string(env) : std::string();
}

ParseCache::ParseCache(std::filesystem::path dir, std::string parser_cmd)
    : dir_(std::move(dir)), parser_cmd_(std::move(parser_cmd)) {}

std::filesystem::path ParseCache::entry_path(std::string_view sentence) const {
  std::string key = parser_cmd_;
  key += '\0';
  key += sentence;
  const std::string hash = sha256_hex(key);
  return dir_ / hash.substr(0, 2) / (hash + ".trees");
}

std::vector<ParseTree> ParseCache::parse_sentences(std::span<const std::string> sentences) {
  std::vector<ParseTree> trees(sentences.size());
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < sentences.size(); ++k) {
    if (dir_.empty()) {
      missing.push_back(k);
      ++stats_.cache_misses;
      continue;
    }
    const auto path = entry_path(sentences[k]);
    std::ifstream in(path);
    if (!in) {
      missing.push_back(k);
      ++stats_.cache_misses;
      continue;
    }
    std::stringstream content;
    content << in.rdbuf();
    const auto lines = split_lines(content.str());
    try {
      if (lines.size() != 1) throw Error(ErrorCode::CacheCorrupt, "expected exactly one tree line");
      trees[k] = read_bracketed(lines.front());
      ++stats_.cache_hits;
    } catch (const Error& e) {
      ++stats_.corrupt_entries;
      ++stats_.cache_misses;
      stats_.warnings.push_back(std::string(to_string(ErrorCode::CacheCorrupt)) + ": " + path.string() + ": " +
                                e.what() + "; reparsing");
      missing.push_back(k);
    }
  }
  if (missing.empty()) return trees;

  std::vector<std::string> batch;
  batch.reserve(missing.size());
  for (std::size_t k : missing) batch.push_back(sentences[k]);
  ++stats_.launches;
  auto parsed = parse_external(batch, parser_cmd_);

  static std::atomic<unsigned long> counter{0};
  for (std::size_t m = 0; m < missing.size(); ++m) {
    const std::size_t k = missing[m];
    if (dir_.empty()) {
      trees[k] = std::move(parsed[m]);
      continue;
    }
    const auto path = entry_path(sentences[k]);
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create cache directory " + path.parent_path().string());
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << write_bracketed(parsed[m]) << '\n';
      if (!out) throw Error(ErrorCode::IoError, "cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot publish cache entry " + path.string());
    trees[k] = std::move(parsed[m]);
  }
  return trees;
}

Document ParseCache::parse(std::string id, std::string_view text) {
  const auto sentences = segment(text);
  return Document{std::move(id), parse_sentences(sentences)};
}

Document cached_parse(std::string id, std::string_view text, const std::filesystem::path& cache_dir,
                      const std::string& parser_cmd, IngestStats* stats) {
  ParseCache cache(cache_dir, parser_cmd);
  Document doc = cache.parse(std::move(id), text);
  if (stats) *stats = cache.stats();
  return doc;
}

}  // namespace fastkassim
