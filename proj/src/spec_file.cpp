#include "shmlenf/spec_file.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "shmlenf/error.hpp"

namespace shmlenf {

namespace {

template <typename T>
const T &lookup(const std::map<std::string, T> &m, const std::string &kind,
                const std::string &name) {
  auto it = m.find(name);
  if (it == m.end())
    throw Error("no " + kind + " named '" + name + "'");
  return it->second;
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Blanks out comments, keeping offsets intact.
std::string strip_comments(std::string_view text) {
  std::string out(text);
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool hash = out[i] == '#';
    bool slashes = out[i] == '/' && i + 1 < out.size() && out[i + 1] == '/';
    if (!hash && !slashes)
      continue;
    while (i < out.size() && out[i] != '\n')
      out[i++] = ' ';
  }
  return out;
}

class Statement {
public:
  Statement(const std::string &text, std::size_t begin, std::size_t end)
      : text_(text), pos_(begin), end_(end) {}

  void skip_space() {
    while (pos_ < end_ && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= end_;
  }
  std::size_t pos() const { return pos_; }
  std::size_t end() const { return end_; }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < end_ && ident_char(text_[pos_]))
      ++pos_;
    if (start == pos_)
      throw ParseError("expected a name", start);
    return text_.substr(start, pos_ - start);
  }
  void expect(char c) {
    skip_space();
    if (pos_ >= end_ || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < end_ && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

private:
  const std::string &text_;
  std::size_t pos_;
  std::size_t end_;
};

std::vector<std::string> name_set(Statement &st) {
  st.expect('=');
  st.expect('{');
  std::vector<std::string> names;
  if (!st.accept('}')) {
    do
      names.push_back(st.word());
    while (st.accept(','));
    st.expect('}');
  }
  if (!st.done())
    throw ParseError("unexpected text after '}'", st.pos());
  return names;
}

template <typename F> auto shifted(std::size_t base, F &&parse) {
  try {
    return parse();
  } catch (const ParseError &e) {
    throw ParseError(e.message(), base + e.position());
  }
}

} // namespace

const Process &SpecFile::process(const std::string &name) const {
  return lookup(processes, "process", name);
}
const Formula &SpecFile::formula(const std::string &name) const {
  return lookup(formulas, "formula", name);
}
const Transducer &SpecFile::enforcer(const std::string &name) const {
  return lookup(enforcers, "enforcer", name);
}

SpecFile parse_spec(std::string_view input) {
  std::string text = strip_comments(input);
  SpecFile spec;
  std::optional<std::vector<std::string>> ports, payloads;
  std::optional<Domain> domain;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find(';', begin);
    if (end == std::string::npos)
      end = text.size();
    Statement st(text, begin, end);
    bool terminated = end < text.size();
    std::size_t next = end + 1;
    if (st.done()) {
      begin = next;
      continue;
    }
    if (!terminated)
      throw ParseError("missing ';'", end);
    std::size_t start = st.pos();
    std::string kind = st.word();
    if (kind == "ports" || kind == "payloads") {
      if (domain)
        throw ParseError("domain declared after its first use", start);
      auto &slot = kind == "ports" ? ports : payloads;
      if (slot)
        throw ParseError("duplicate '" + kind + "' declaration", start);
      slot = name_set(st);
    } else if (kind == "process" || kind == "formula" || kind == "enforcer") {
      if (!domain) {
        if (!ports || !payloads)
          throw ParseError("declare ports and payloads before definitions",
                           start);
        try {
          domain = Domain(*ports, *payloads);
        } catch (const ParseError &) {
          throw;
        } catch (const Error &e) {
          throw ParseError(e.what(), start);
        }
        spec.domain = *domain;
      }
      std::size_t name_pos = st.pos();
      std::string name = st.word();
      if (spec.processes.count(name) || spec.formulas.count(name) ||
          spec.enforcers.count(name))
        throw ParseError("duplicate definition of '" + name + "'", name_pos);
      st.expect('=');
      std::size_t body = st.pos();
      std::string_view source(text.data() + body, end - body);
      const Domain *d = &*domain;
      if (kind == "process")
        spec.processes.emplace(
            name, shifted(body, [&] { return parse_process(source, d); }));
      else if (kind == "formula")
        spec.formulas.emplace(
            name, shifted(body, [&] { return parse_formula(source, d); }));
      else
        spec.enforcers.emplace(
            name, shifted(body, [&] { return parse_transducer(source, d); }));
      spec.order.push_back({kind, name});
    } else {
      throw ParseError("unknown statement '" + kind + "'", start);
    }
    begin = next;
  }
  if (!domain) {
    if (!ports || !payloads)
      throw ParseError("missing ports or payloads declaration", text.size());
    try {
      spec.domain = Domain(*ports, *payloads);
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), 0);
    }
  }
  return spec;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SpecFile load_spec(const std::string &path) {
  return parse_spec(read_file(path));
}

std::string line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

} // namespace shmlenf
