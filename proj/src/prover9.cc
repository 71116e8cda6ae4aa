// Copyright 2026 The symdrift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "symdrift/prover9.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <regex>
#include <sstream>

#include "symdrift/error.h"

namespace symdrift::solver {

namespace {

constexpr std::string_view kProofMarker = "THEOREM PROVED";

void EmitSection(std::ostringstream& out, std::string_view name,
                 const std::vector<fol::Formula>& formulas, const fol::SymbolRegistry& registry) {
  out << "formulas(" << name << ").\n";
  for (const fol::Formula& f : formulas) {
    out << "  " << fol::RenderFormula(f, registry, fol::Dialect::kProver9) << "\n";
  }
  out << "end_of_list.\n";
}

std::string EmitWithGoal(const fol::LogicProgram& program, const fol::Formula& goal) {
  std::ostringstream out;
  EmitSection(out, "assumptions", program.premises, program.registry);
  out << "\n";
  EmitSection(out, "goals", {goal}, program.registry);
  return out.str();
}

struct RunResult {
  bool proved = false;
  bool timed_out = false;
};

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    const char* dir = std::getenv("TMPDIR");
    std::string pattern = std::string(dir && *dir ? dir : "/tmp") + "/symdrift-p9-XXXXXX";
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    const int fd = ::mkstemp(buf.data());
    if (fd < 0) throw Error(ErrorCode::kIo, std::string("mkstemp: ") + std::strerror(errno));
    path_ = buf.data();
    std::size_t written = 0;
    while (written < contents.size()) {
      const ssize_t n = ::write(fd, contents.data() + written, contents.size() - written);
      if (n <= 0) {
        ::close(fd);
        throw Error(ErrorCode::kIo, "write " + path_);
      }
      written += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempFile() { ::unlink(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

RunResult RunOnce(const std::string& binary, const std::string& input, double timeout_s) {
  TempFile file(input);
  int out_pipe[2];
  int err_pipe[2];  // reports exec failure; closed on successful exec
  if (::pipe(out_pipe) != 0 || ::pipe2(err_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::kIo, std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorCode::kIo, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      ::dup2(devnull, STDIN_FILENO);
      ::dup2(devnull, STDERR_FILENO);
    }
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    const char* argv[] = {binary.c_str(), "-f", file.path().c_str(), nullptr};
    ::execv(binary.c_str(), const_cast<char* const*>(argv));
    const int e = errno;
    [[maybe_unused]] auto ignored = ::write(err_pipe[1], &e, sizeof e);
    ::_exit(127);
  }
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  int exec_errno = 0;
  const bool exec_failed = ::read(err_pipe[0], &exec_errno, sizeof exec_errno) == sizeof exec_errno;
  ::close(err_pipe[0]);
  if (exec_failed) {
    ::close(out_pipe[0]);
    ::waitpid(pid, nullptr, 0);
    throw Error(ErrorCode::kExternalUnavailable,
                "cannot execute " + binary + ": " + std::strerror(exec_errno));
  }

  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000.0));
  std::string output;
  RunResult result;
  char buf[4096];
  while (true) {
    const auto left =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (left <= 0) {
      result.timed_out = true;
      break;
    }
    pollfd pfd{out_pipe[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left, 1000)));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    const ssize_t n = ::read(out_pipe[0], buf, sizeof buf);
    if (n <= 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(out_pipe[0]);
  if (result.timed_out) ::kill(-pid, SIGKILL);
  ::waitpid(pid, nullptr, 0);
  result.proved = !result.timed_out && output.find(kProofMarker) != std::string::npos;
  return result;
}

std::string StripComments(std::string_view text) {
  std::string out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto pct = line.find('%');
    out += line.substr(0, pct);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string EmitProver9(const fol::LogicProgram& program) {
  std::ostringstream out;
  EmitSection(out, "assumptions", program.premises, program.registry);
  out << "\n";
  std::vector<fol::Formula> goals;
  if (program.query) goals.push_back(*program.query);
  EmitSection(out, "goals", goals, program.registry);
  return out.str();
}

fol::LogicProgram ParseProver9Input(std::string_view text) {
  static const std::regex kPrefixed(R"(\bc_([u-z]\w*))");
  const std::string body = std::regex_replace(StripComments(text), kPrefixed, "$1");

  fol::LogicProgram program;
  enum class Section { kNone, kAssumptions, kGoals } section = Section::kNone;
  std::size_t start = 0;
  while (true) {
    const auto dot = body.find('.', start);
    if (dot == std::string::npos) {
      if (body.find_first_not_of(" \t\r\n", start) != std::string::npos) {
        throw SyntaxError(start, "'.'", "end of input");
      }
      break;
    }
    std::string stmt = body.substr(start, dot - start);
    start = dot + 1;
    const auto b = stmt.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    stmt = stmt.substr(b, stmt.find_last_not_of(" \t\r\n") - b + 1);
    if (stmt == "formulas(assumptions)" || stmt == "formulas(sos)") {
      section = Section::kAssumptions;
    } else if (stmt == "formulas(goals)") {
      section = Section::kGoals;
    } else if (stmt == "end_of_list") {
      section = Section::kNone;
    } else if (section == Section::kAssumptions) {
      program.premises.push_back(fol::ParseFormula(stmt, program.registry));
    } else if (section == Section::kGoals) {
      if (program.query) throw SyntaxError(b, "a single goal", "'" + stmt + "'");
      program.query = fol::ParseFormula(stmt, program.registry);
    } else {
      throw SyntaxError(b, "formulas(...) section", "'" + stmt + "'");
    }
  }
  return program;
}

Verdict RunExternalProver(const fol::LogicProgram& program, const std::string& binary_path,
                          double timeout_s) {
  if (!program.query) throw Error(ErrorCode::kInvalidArgument, "program has no query");
  struct stat st{};
  if (binary_path.empty() || ::stat(binary_path.c_str(), &st) != 0 || !S_ISREG(st.st_mode) ||
      ::access(binary_path.c_str(), X_OK) != 0) {
    throw Error(ErrorCode::kExternalUnavailable, "no executable at '" + binary_path + "'");
  }
  Verdict verdict;
  const RunResult entail = RunOnce(binary_path, EmitWithGoal(program, *program.query), timeout_s);
  verdict.steps = 1;
  if (entail.proved) {
    verdict.value = Outcome::kProved;
    return verdict;
  }
  const RunResult refute =
      RunOnce(binary_path, EmitWithGoal(program, fol::Formula::Not(*program.query)), timeout_s);
  verdict.steps = 2;
  if (refute.proved) {
    verdict.value = Outcome::kDisproved;
    return verdict;
  }
  verdict.value = Outcome::kUnknown;
  verdict.limit_hit = entail.timed_out || refute.timed_out;
  return verdict;
}

std::string FindProver9() {
  const char* path = std::getenv("PATH");
  if (!path) return {};
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    const std::string candidate = dir + "/prover9";
    if (::access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  return {};
}

}  // namespace symdrift::solver
