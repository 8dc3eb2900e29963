#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ftp/instance.hpp"

namespace ftp::detail {

// One tokenized, non-blank input line.
class Line {
 public:
  Line(int number, std::vector<std::string> tokens)
      : number_(number), tokens_(std::move(tokens)) {}

  int number() const { return number_; }
  bool at_end() const { return pos_ >= tokens_.size(); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(number_, what); }

  std::string word(const char* what) {
    if (at_end()) fail(std::string("missing ") + what);
    return tokens_[pos_++];
  }

  void expect_word(const std::string& expected) {
    const std::string got = word(expected.c_str());
    if (got != expected) fail("expected '" + expected + "', got '" + got + "'");
  }

  long long integer(const char* what) {
    const std::string tok = word(what);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used == tok.size()) return v;
    } catch (const std::exception&) {
    }
    fail(std::string("malformed ") + what + ": '" + tok + "'");
  }

  void expect_end() const {
    if (!at_end()) fail("unexpected trailing token '" + tokens_[pos_] + "'");
  }

 private:
  int number_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

// Line-oriented reader; '#' starts a comment, blank lines are skipped.
class TextReader {
 public:
  explicit TextReader(std::istream& in) : in_(in) {}

  bool has_next() {
    fill();
    return pending_.has_value();
  }

  Line next_line(const char* what) {
    fill();
    if (!pending_) throw ParseError(line_no_ + 1, std::string("unexpected end of input, expected ") + what);
    Line out = std::move(*pending_);
    pending_.reset();
    return out;
  }

  void expect_eof() {
    fill();
    if (pending_) pending_->fail("unexpected extra line");
  }

 private:
  void fill() {
    std::string raw;
    while (!pending_ && std::getline(in_, raw)) {
      ++line_no_;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
      std::istringstream words(raw);
      std::vector<std::string> tokens;
      for (std::string w; words >> w;) tokens.push_back(w);
      if (!tokens.empty()) pending_.emplace(line_no_, std::move(tokens));
    }
  }

  std::istream& in_;
  int line_no_ = 0;
  std::optional<Line> pending_;
};

}  // namespace ftp::detail
