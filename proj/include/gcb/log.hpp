#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace gcb::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Verbosity comes from the BENCH_LOG environment variable
// (error|warn|info|debug). Default is warn.
inline Level threshold() {
  static Level lvl = [] {
    const char* env = std::getenv("BENCH_LOG");
    if (env == nullptr) return Level::Warn;
    if (std::strcmp(env, "error") == 0) return Level::Error;
    if (std::strcmp(env, "info") == 0) return Level::Info;
    if (std::strcmp(env, "debug") == 0) return Level::Debug;
    return Level::Warn;
  }();
  return lvl;
}

inline void write(Level lvl, const std::string& msg) {
  if (lvl > threshold()) return;
  const char* tag = lvl == Level::Error  ? "error"
                    : lvl == Level::Warn ? "warn"
                    : lvl == Level::Info ? "info"
                                         : "debug";
  std::fprintf(stderr, "[bench %s] %s\n", tag, msg.c_str());
}

inline void error(const std::string& msg) { write(Level::Error, msg); }
inline void warn(const std::string& msg) { write(Level::Warn, msg); }
inline void info(const std::string& msg) { write(Level::Info, msg); }
inline void debug(const std::string& msg) { write(Level::Debug, msg); }

}  // namespace gcb::log
