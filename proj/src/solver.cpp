#include "tick/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

namespace tick {

std::vector<std::string> default_solver_command() {
  if (const char* env = std::getenv("TICKCHECK_SOLVER"); env && *env) {
    std::istringstream in(env);
    std::vector<std::string> argv;
    std::string word;
    while (in >> word) argv.push_back(word);
    if (!argv.empty()) return argv;
  }
  return {"z3", "-in"};
}

namespace {

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

struct Pipe {
  int fds[2] = {-1, -1};
  bool open() { return ::pipe(fds) == 0; }
  void close_read() { close_fd(fds[0]); }
  void close_write() { close_fd(fds[1]); }
  ~Pipe() {
    close_read();
    close_write();
  }
  static void close_fd(int& fd) {
    if (fd >= 0) {
      ::close(fd);
      fd = -1;
    }
  }
};

bool set_nonblocking(int fd) {
  const int flags = ::fcntl(fd, F_GETFL, 0);
  return flags >= 0 && ::fcntl(fd, F_SETFL, flags | O_NONBLOCK) == 0;
}

}  // namespace

ExecResult run_process(const std::vector<std::string>& argv, const std::string& input,
                       double timeout_seconds) {
  ExecResult result;
  if (argv.empty()) {
    result.spawn_failed = true;
    return result;
  }
  ignore_sigpipe_once();

  Pipe in, out, err;
  if (!in.open() || !out.open() || !err.open()) {
    result.spawn_failed = true;
    return result;
  }

  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    result.spawn_failed = true;
    return result;
  }
  if (pid == 0) {
    // Child: only async-signal-safe calls before exec.
    ::dup2(in.fds[0], STDIN_FILENO);
    ::dup2(out.fds[1], STDOUT_FILENO);
    ::dup2(err.fds[1], STDERR_FILENO);
    for (int fd : {in.fds[0], in.fds[1], out.fds[0], out.fds[1], err.fds[0], err.fds[1]}) {
      ::close(fd);
    }
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
  }

  in.close_read();
  out.close_write();
  err.close_write();
  set_nonblocking(in.fds[1]);
  set_nonblocking(out.fds[0]);
  set_nonblocking(err.fds[0]);

  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
  size_t written = 0;
  bool stdin_open = true;

  auto drain = [](int fd, std::string& sink) -> bool {
    char buf[65536];
    while (true) {
      const ssize_t n = ::read(fd, buf, sizeof buf);
      if (n > 0) {
        sink.append(buf, static_cast<size_t>(n));
        continue;
      }
      if (n == 0) return false;  // EOF
      return errno == EAGAIN || errno == EWOULDBLOCK;
    }
  };

  bool out_open = true, err_open = true;
  while (out_open || err_open || stdin_open) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      ::kill(pid, SIGKILL);
      int status = 0;
      ::waitpid(pid, &status, 0);
      result.timed_out = true;
      return result;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);

    struct pollfd fds[3];
    nfds_t nfds = 0;
    int out_slot = -1, err_slot = -1, in_slot = -1;
    if (out_open) {
      out_slot = static_cast<int>(nfds);
      fds[nfds++] = {out.fds[0], POLLIN, 0};
    }
    if (err_open) {
      err_slot = static_cast<int>(nfds);
      fds[nfds++] = {err.fds[0], POLLIN, 0};
    }
    if (stdin_open) {
      in_slot = static_cast<int>(nfds);
      fds[nfds++] = {in.fds[1], POLLOUT, 0};
    }
    const int rc = ::poll(fds, nfds, static_cast<int>(remaining.count()) + 1);
    if (rc < 0 && errno != EINTR) break;
    if (rc <= 0) continue;

    if (in_slot >= 0 && (fds[in_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[in_slot].revents & (POLLERR | POLLHUP)) {
        stdin_open = false;
        in.close_write();
      } else {
        const ssize_t n =
            ::write(in.fds[1], input.data() + written, input.size() - written);
        if (n > 0) written += static_cast<size_t>(n);
        if ((n < 0 && errno != EAGAIN && errno != EWOULDBLOCK) || written == input.size()) {
          stdin_open = false;
          in.close_write();  // EOF tells the solver the script is complete
        }
      }
    }
    if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP | POLLERR))) {
      if (!drain(out.fds[0], result.out)) {
        out_open = false;
        out.close_read();
      }
    }
    if (err_slot >= 0 && (fds[err_slot].revents & (POLLIN | POLLHUP | POLLERR))) {
      if (!drain(err.fds[0], result.err)) {
        err_open = false;
        err.close_read();
      }
    }
  }

  int status = 0;
  // The child may outlive its closed pipes; enforce the deadline on wait too.
  while (true) {
    const pid_t w = ::waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (w < 0) {
      result.exit_code = -1;
      return result;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      result.timed_out = true;
      return result;
    }
    ::usleep(2000);
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = -1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// SMT-LIB response parsing

namespace {

struct Tokens {
  std::vector<std::string> items;
  size_t pos = 0;
  bool done() const { return pos >= items.size(); }
  const std::string& peek() const { return items[pos]; }
  std::string next() { return items[pos++]; }
};

Tokens tokenize(const std::string& text) {
  Tokens t;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      t.items.push_back(cur);
      cur.clear();
    }
  };
  for (size_t idx = 0; idx < text.size(); ++idx) {
    const char c = text[idx];
    if (c == '(' || c == ')') {
      flush();
      t.items.push_back(std::string(1, c));
    } else if (c == '"') {  // string literal (error messages); skip content
      flush();
      for (++idx; idx < text.size() && text[idx] != '"'; ++idx) {
      }
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return t;
}

// Parses one value expression: INT or (- INT).
bool parse_value(Tokens& t, std::int64_t& out) {
  if (t.done()) return false;
  if (t.peek() == "(") {
    t.next();
    if (t.done() || t.next() != "-") return false;
    if (t.done()) return false;
    try {
      out = -std::stoll(t.next());
    } catch (...) {
      return false;
    }
    return !t.done() && t.next() == ")";
  }
  try {
    out = std::stoll(t.next());
  } catch (...) {
    return false;
  }
  return true;
}

// Parses the ((name val) (name val) ...) block following a sat answer.
bool parse_bindings(Tokens& t, std::map<std::string, std::int64_t>& values) {
  if (t.done() || t.next() != "(") return false;
  while (!t.done() && t.peek() == "(") {
    t.next();
    if (t.done()) return false;
    const std::string name = t.next();
    std::int64_t v = 0;
    if (!parse_value(t, v)) return false;
    if (t.done() || t.next() != ")") return false;
    values[name] = v;
  }
  return !t.done() && t.next() == ")";
}

}  // namespace

SolverResult run_solver(const std::string& smt2_text, const SolverConfig& config) {
  SolverResult result;
  std::vector<std::string> argv = config.command.empty() ? default_solver_command() : config.command;

  // Optional file-argument protocol: substitute {file} with a temp path.
  std::string temp_path;
  for (auto& arg : argv) {
    if (arg == "{file}") {
      char pattern[] = "/tmp/tickcheck-XXXXXX";
      const int fd = ::mkstemp(pattern);
      if (fd < 0) {
        result.error = "cannot create temporary file for solver input";
        return result;
      }
      ::close(fd);
      temp_path = pattern;
      std::ofstream f(temp_path);
      f << smt2_text;
      arg = temp_path;
    }
  }

  const ExecResult exec =
      run_process(argv, temp_path.empty() ? smt2_text : std::string(), config.timeout_seconds);
  if (!temp_path.empty()) ::unlink(temp_path.c_str());

  result.raw = exec.out;
  if (exec.timed_out) {
    result.error = "solver timed out after " + std::to_string(config.timeout_seconds) + "s";
    return result;
  }
  if (exec.spawn_failed) {
    result.error = "could not start solver process";
    return result;
  }

  Tokens tokens = tokenize(exec.out);
  // Skip any leading diagnostics until the first sat/unsat answer.
  while (!tokens.done() && tokens.peek() != "sat" && tokens.peek() != "unsat" &&
         tokens.peek() != "unknown") {
    tokens.next();
  }
  if (tokens.done()) {
    std::ostringstream msg;
    msg << "unrecognized solver output (exit code " << exec.exit_code << ")";
    if (!exec.err.empty()) msg << ": " << exec.err.substr(0, 500);
    if (!exec.out.empty()) msg << ": " << exec.out.substr(0, 500);
    result.error = msg.str();
    return result;
  }

  const std::string answer = tokens.next();
  if (answer == "unsat") {
    result.status = SolverStatus::Unsat;
    return result;
  }
  if (answer == "unknown") {
    result.error = "solver answered unknown";
    return result;
  }
  if (!parse_bindings(tokens, result.values)) {
    result.error = "sat answer without parseable model values";
    return result;
  }
  result.status = SolverStatus::Sat;
  return result;
}

}  // namespace tick
