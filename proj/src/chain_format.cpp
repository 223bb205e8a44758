#include "addchain/chain_format.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>

namespace addchain {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t number() {
    skip_space();
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), out);
    if (ec != std::errc()) fail("expected an unsigned integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return out;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError,
                msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Chain parse_chain(std::string_view line) {
  Cursor cur(line);
  std::vector<Value> values;
  std::vector<std::optional<OperandPair>> annotations;
  do {
    values.push_back(cur.number());
    std::optional<OperandPair> op;
    if (cur.accept('(')) {
      OperandPair p;
      p.i = cur.number();
      cur.expect(',');
      p.s = cur.number();
      cur.expect(')');
      op = p;
    }
    annotations.push_back(op);
  } while (cur.accept(','));
  if (!cur.done()) cur.fail("trailing characters");
  if (annotations.front()) {
    throw Error(ErrorKind::BadOperandIndex, "a_0 takes no operands", 0);
  }

  bool any_missing = false;
  for (std::size_t j = 1; j < annotations.size(); ++j) any_missing |= !annotations[j];
  std::vector<OperandPair> ops;
  if (any_missing) {
    const Chain inferred = infer_operands(values);
    ops = inferred.operands();
  }
  ops.resize(values.size() - 1);
  for (std::size_t j = 1; j < annotations.size(); ++j) {
    if (annotations[j]) ops[j - 1] = *annotations[j];
  }
  return validate_chain(values, ops);
}

std::string format_chain(const Chain& chain, bool with_operands) {
  std::string out;
  const auto& steps = chain.steps();
  for (std::size_t j = 0; j < steps.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(steps[j].value);
    if (with_operands && steps[j].operands) {
      out += '(' + std::to_string(steps[j].operands->i) + ',' +
             std::to_string(steps[j].operands->s) + ')';
    }
  }
  return out;
}

std::vector<Chain> read_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open chain file " + path.string());
  std::vector<Chain> chains;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    chains.push_back(parse_chain(line));
  }
  return chains;
}

}  // namespace addchain
