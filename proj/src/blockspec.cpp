#include "bcqp/blockspec.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bcqp/errors.hpp"

namespace bcqp {

namespace {

[[noreturn]] void bad_spec(const std::string& text) {
  throw InvariantError("invalid block spec \"" + text +
                       "\"; expected the form 10x(50x10) or 5x(50x10,75x15,...)");
}

int read_int(const std::string& text, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start) bad_spec(text);
  return std::stoi(text.substr(start, pos - start));
}

}  // namespace

std::vector<BlockDims> parse_block_spec(const std::string& text) {
  std::size_t pos = 0;
  const int count = read_int(text, pos);
  if (count <= 0 || pos >= text.size() || text[pos] != 'x') bad_spec(text);
  ++pos;
  if (pos >= text.size() || text[pos] != '(') bad_spec(text);
  ++pos;

  std::vector<BlockDims> listed;
  for (;;) {
    BlockDims b;
    b.n_i = read_int(text, pos);
    if (pos >= text.size() || text[pos] != 'x') bad_spec(text);
    ++pos;
    b.m_i = read_int(text, pos);
    listed.push_back(b);
    if (pos >= text.size()) bad_spec(text);
    if (text[pos] == ')') {
      ++pos;
      break;
    }
    if (text[pos] != ',') bad_spec(text);
    ++pos;
  }
  if (pos != text.size()) bad_spec(text);

  if (listed.size() == 1)
    return std::vector<BlockDims>(static_cast<std::size_t>(count), listed[0]);
  if (static_cast<int>(listed.size()) != count) bad_spec(text);
  return listed;
}

std::string format_block_spec(const std::vector<BlockDims>& blocks) {
  const bool uniform =
      std::all_of(blocks.begin(), blocks.end(),
                  [&](const BlockDims& b) { return b == blocks.front(); });
  std::ostringstream out;
  out << blocks.size() << "x(";
  if (uniform) {
    out << blocks.front().n_i << 'x' << blocks.front().m_i;
  } else {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i) out << ',';
      out << blocks[i].n_i << 'x' << blocks[i].m_i;
    }
  }
  out << ')';
  return out.str();
}

}  // namespace bcqp
