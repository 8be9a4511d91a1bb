#include "nambu/model.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nambu {

namespace {

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct RawValue {
  enum class Kind { text, array, integer, boolean } kind = Kind::text;
  std::string text;
  std::vector<std::string> array;
  long long integer = 0;
  bool boolean = false;
};

struct RawEntry {
  std::vector<std::string> key;
  RawValue value;
  int line = 0;
};

struct RawSection {
  int line = 0;
  std::vector<RawEntry> entries;
};

std::string key_text(const std::vector<std::string>& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += '.';
    out += key[i];
  }
  return out;
}

// One line being scanned; offsets feed parse_error positions.
struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  int line = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, i, line);
  }
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  std::string quoted() {
    skip_ws();
    if (i >= s.size() || s[i] != '"') fail("expected a quoted string");
    std::size_t start = ++i;
    while (i < s.size() && s[i] != '"') ++i;
    if (i >= s.size()) fail("unterminated quoted string");
    return s.substr(start, i++ - start);
  }
  std::string bare_word() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (i == start) fail("expected an identifier");
    return s.substr(start, i - start);
  }
};

std::string strip_comment(const std::string& line) {
  bool quote = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quote = !quote;
    else if (line[i] == '#' && !quote) return line.substr(0, i);
  }
  return line;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

RawValue parse_value(Cursor& c) {
  RawValue v;
  char ch = c.peek();
  if (ch == '"') {
    v.kind = RawValue::Kind::text;
    v.text = c.quoted();
    return v;
  }
  if (ch == '[') {
    v.kind = RawValue::Kind::array;
    ++c.i;
    if (c.peek() == ']') {
      ++c.i;
      return v;
    }
    while (true) {
      v.array.push_back(c.quoted());
      char sep = c.peek();
      if (sep == ',') {
        ++c.i;
        continue;
      }
      if (sep == ']') {
        ++c.i;
        return v;
      }
      c.fail("expected ',' or ']' in an array");
    }
  }
  if (std::isalpha(static_cast<unsigned char>(ch))) {
    std::string word = c.bare_word();
    if (word == "true" || word == "false") {
      v.kind = RawValue::Kind::boolean;
      v.boolean = (word == "true");
      return v;
    }
    c.fail("unexpected bare value '" + word + "'");
  }
  if (ch == '+' || ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
    c.skip_ws();
    std::size_t start = c.i;
    if (ch == '+' || ch == '-') ++c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
      ++c.i;
    if (c.i == start + (ch == '+' || ch == '-' ? 1u : 0u))
      c.fail("expected an integer");
    v.kind = RawValue::Kind::integer;
    v.integer = std::stoll(c.s.substr(start, c.i - start));
    return v;
  }
  c.fail("unreadable value");
}

std::map<std::string, RawSection> parse_raw(const std::string& text) {
  std::map<std::string, RawSection> sections;
  RawSection* current = nullptr;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trimmed(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw parse_error("section header must end with ']'", line.size(), line_no);
      std::string name = trimmed(line.substr(1, line.size() - 2));
      if (!is_ident(name))
        throw parse_error("bad section name '" + name + "'", 1, line_no);
      if (sections.count(name))
        throw parse_error("duplicate section [" + name + "]", 1, line_no);
      current = &sections[name];
      current->line = line_no;
      continue;
    }
    if (!current)
      throw parse_error("entry before any section header", 0, line_no);
    Cursor c{line, 0, line_no};
    RawEntry entry;
    entry.line = line_no;
    while (true) {
      if (c.peek() == '"') entry.key.push_back(c.quoted());
      else entry.key.push_back(c.bare_word());
      if (c.peek() == '.') {
        ++c.i;
        continue;
      }
      break;
    }
    if (c.peek() != '=') c.fail("expected '=' after the key");
    ++c.i;
    entry.value = parse_value(c);
    if (!c.done()) c.fail("trailing text after the value");
    for (const RawEntry& prev : current->entries)
      if (prev.key == entry.key)
        throw parse_error("duplicate key '" + key_text(entry.key) + "'", 0, line_no);
    current->entries.push_back(std::move(entry));
  }
  return sections;
}

const char* kSections[] = {"meta",  "chart",  "algebroid", "anchor", "bracket",
                           "nambu", "volume", "coframe",   "expect"};

// Index list "i,j,k": 1-based, strictly increasing, within the rank.
std::uint32_t parse_mask(const std::string& key, int rank, int line) {
  std::uint32_t mask = 0;
  int prev = 0;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t next = key.find(',', pos);
    std::string part = trimmed(key.substr(pos, next == std::string::npos
                                                   ? std::string::npos
                                                   : next - pos));
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("bad index list '" + key + "'", pos, line);
    int idx = std::stoi(part);
    if (idx < 1 || idx > rank)
      throw parse_error("index " + part + " outside 1.." + std::to_string(rank),
                        pos, line);
    if (idx <= prev)
      throw parse_error("index list '" + key + "' must be strictly increasing",
                        pos, line);
    prev = idx;
    mask |= 1u << (idx - 1);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return mask;
}

std::string mask_key(std::uint32_t mask) {
  std::string out;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) {
      if (!out.empty()) out += ',';
      out += std::to_string(i + 1);
    }
  return out;
}

}  // namespace

ModelFile load_model(const std::string& text, const std::string& origin) {
  auto sections = parse_raw(text);
  std::string who = origin.empty() ? "model" : "model '" + origin + "'";

  for (const auto& [name, sec] : sections) {
    bool known = false;
    for (const char* s : kSections) known = known || name == s;
    if (!known)
      throw parse_error("unknown section [" + name + "]", 0, sec.line);
  }

  auto section = [&](const char* name) -> const RawSection* {
    auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };
  auto require_section = [&](const char* name) -> const RawSection& {
    const RawSection* s = section(name);
    if (!s) throw parse_error(who + " is missing the [" + name + "] section", 0, 0);
    return *s;
  };
  auto find_entry = [](const RawSection& s, const std::string& key) -> const RawEntry* {
    for (const RawEntry& e : s.entries)
      if (e.key.size() == 1 && e.key[0] == key) return &e;
    return nullptr;
  };
  auto expect_kind = [&](const RawEntry& e, RawValue::Kind k, const char* what) {
    if (e.value.kind != k)
      throw parse_error("key '" + key_text(e.key) + "' must be " + what, 0, e.line);
  };

  ModelFile m;

  if (const RawSection* meta = section("meta")) {
    for (const RawEntry& e : meta->entries) {
      if (e.key.size() == 1 && e.key[0] == "name") {
        expect_kind(e, RawValue::Kind::text, "a string");
        m.name = e.value.text;
      } else if (e.key.size() == 1 && e.key[0] == "description") {
        expect_kind(e, RawValue::Kind::text, "a string");
        m.description = e.value.text;
      } else {
        throw parse_error("unknown meta key '" + key_text(e.key) + "'", 0, e.line);
      }
    }
  }

  const RawSection& chart_sec = require_section("chart");
  std::vector<std::string> coords;
  for (const RawEntry& e : chart_sec.entries) {
    if (e.key.size() != 1 || e.key[0] != "coords")
      throw parse_error("unknown chart key '" + key_text(e.key) + "'", 0, e.line);
    expect_kind(e, RawValue::Kind::array, "an array");
    coords = e.value.array;
    for (const std::string& c : coords) {
      if (!is_ident(c) || c == "exp" || c[0] == '_')
        throw parse_error("bad coordinate name '" + c + "'", 0, e.line);
      if (std::count(coords.begin(), coords.end(), c) > 1)
        throw parse_error("duplicate coordinate '" + c + "'", 0, e.line);
    }
  }
  if (!find_entry(chart_sec, "coords"))
    throw parse_error(who + " chart section needs a coords array", 0,
                      chart_sec.line);
  ChartPtr chart = make_chart(coords);
  const int dim = chart->dim();

  const RawSection& alg_sec = require_section("algebroid");
  int rank = 0;
  std::vector<std::string> frame;
  std::set<std::string> symbols;
  for (const RawEntry& e : alg_sec.entries) {
    if (e.key.size() != 1)
      throw parse_error("unknown algebroid key '" + key_text(e.key) + "'", 0, e.line);
    const std::string& k = e.key[0];
    if (k == "rank") {
      expect_kind(e, RawValue::Kind::integer, "an integer");
      rank = static_cast<int>(e.value.integer);
      if (rank < 1 || rank > 20)
        throw parse_error("rank must be between 1 and 20", 0, e.line);
    } else if (k == "frame") {
      expect_kind(e, RawValue::Kind::array, "an array");
      frame = e.value.array;
      for (const std::string& f : frame) {
        if (!is_ident(f) || f[0] == '_')
          throw parse_error("bad frame name '" + f + "'", 0, e.line);
        if (std::count(frame.begin(), frame.end(), f) > 1)
          throw parse_error("duplicate frame name '" + f + "'", 0, e.line);
      }
    } else if (k == "symbols") {
      expect_kind(e, RawValue::Kind::array, "an array");
      for (const std::string& s : e.value.array) {
        if (!is_ident(s) || s == "exp" || s[0] == '_')
          throw parse_error("bad symbol name '" + s + "' (leading underscores "
                            "are reserved)", 0, e.line);
        if (std::count(coords.begin(), coords.end(), s))
          throw parse_error("symbol '" + s + "' collides with a coordinate", 0,
                            e.line);
        if (!symbols.insert(s).second)
          throw parse_error("duplicate symbol '" + s + "'", 0, e.line);
      }
    } else {
      throw parse_error("unknown algebroid key '" + k + "'", 0, e.line);
    }
  }
  if (rank == 0)
    throw parse_error(who + " algebroid section needs a rank", 0, alg_sec.line);
  if (static_cast<int>(frame.size()) != rank)
    throw parse_error("frame must list exactly rank names", 0, alg_sec.line);

  auto expr = [&](const std::string& text_in, int line, const std::string& what) {
    try {
      return parse_expr(text_in, *chart, symbols);
    } catch (const parse_error& pe) {
      throw parse_error(std::string(pe.what()) + " in " + what, pe.pos, line);
    }
  };

  auto presentation = std::make_shared<AlgebroidPresentation>();
  presentation->chart = chart;
  presentation->rank = rank;
  presentation->frame = frame;
  presentation->symbols = symbols;
  presentation->anchor.assign(rank, std::vector<ScalarExpr>(dim, ScalarExpr::zero()));

  const RawSection* anchor_sec = section("anchor");
  if (dim == 0) {
    if (anchor_sec)
      throw parse_error("anchor rows need a positive-dimensional chart", 0,
                        anchor_sec->line);
  } else {
    if (!anchor_sec)
      throw parse_error(who + " is missing the [anchor] section", 0, 0);
    std::vector<bool> seen(rank, false);
    for (const RawEntry& e : anchor_sec->entries) {
      if (e.key.size() != 1)
        throw parse_error("bad anchor row key", 0, e.line);
      std::uint32_t mask = parse_mask(e.key[0], rank, e.line);
      if (std::popcount(mask) != 1)
        throw parse_error("anchor rows are keyed by a single frame index", 0,
                          e.line);
      int row = std::countr_zero(mask);
      seen[row] = true;
      expect_kind(e, RawValue::Kind::array, "an array");
      if (static_cast<int>(e.value.array.size()) != dim)
        throw parse_error("anchor row " + e.key[0] + " must have one entry per "
                          "coordinate", 0, e.line);
      for (int a = 0; a < dim; ++a)
        presentation->anchor[row][a] =
            expr(e.value.array[a], e.line, "anchor row " + e.key[0]);
    }
    for (int i = 0; i < rank; ++i)
      if (!seen[i])
        throw parse_error("missing anchor row \"" + std::to_string(i + 1) + "\"",
                          0, anchor_sec->line);
  }

  if (const RawSection* br = section("bracket")) {
    for (const RawEntry& e : br->entries) {
      if (e.key.size() != 1)
        throw parse_error("bad bracket key", 0, e.line);
      std::uint32_t mask = parse_mask(e.key[0], rank, e.line);
      if (std::popcount(mask) != 2)
        throw parse_error("bracket entries are keyed by an index pair", 0, e.line);
      int i = std::countr_zero(mask);
      int j = std::countr_zero(mask & ~(1u << i));
      expect_kind(e, RawValue::Kind::array, "an array");
      if (static_cast<int>(e.value.array.size()) != rank)
        throw parse_error("bracket entry " + e.key[0] + " must have one entry "
                          "per frame section", 0, e.line);
      std::vector<ScalarExpr> row;
      bool nonzero = false;
      for (int k = 0; k < rank; ++k) {
        row.push_back(expr(e.value.array[k], e.line, "bracket entry " + e.key[0]));
        nonzero = nonzero || !row.back().is_zero_expr();
      }
      if (nonzero) presentation->structure.emplace(std::make_pair(i, j), std::move(row));
    }
  }

  m.algebroid = presentation;
  VerificationReport axioms = validate_axioms(m.algebroid);
  if (!axioms.passed()) {
    std::string detail;
    for (const CheckItem& item : axioms.items)
      if (item.status == CheckStatus::fail) {
        detail = item.name;
        break;
      }
    throw domain_error(who + ": algebroid axioms fail (" + detail + ")");
  }

  if (const RawSection* nb = section("nambu")) {
    const RawEntry* order_entry = find_entry(*nb, "order");
    if (!order_entry)
      throw parse_error("nambu section needs an order", 0, nb->line);
    expect_kind(*order_entry, RawValue::Kind::integer, "an integer");
    int order = static_cast<int>(order_entry->value.integer);
    if (order < 2 || order > rank)
      throw parse_error("order must be between 2 and the rank", 0,
                        order_entry->line);
    ExteriorTensor pi(m.algebroid, Variance::multivector, order);
    for (const RawEntry& e : nb->entries) {
      if (e.key.size() == 1 && e.key[0] == "order") continue;
      if (e.key.size() == 1 && e.key[0] == "allow_order_2") {
        expect_kind(e, RawValue::Kind::boolean, "a boolean");
        m.allow_order_2 = e.value.boolean;
        continue;
      }
      if (e.key.size() != 1)
        throw parse_error("bad nambu key '" + key_text(e.key) + "'", 0, e.line);
      std::uint32_t mask = parse_mask(e.key[0], rank, e.line);
      if (std::popcount(mask) != order)
        throw parse_error("component '" + e.key[0] + "' does not match the order",
                          0, e.line);
      expect_kind(e, RawValue::Kind::text, "an expression string");
      pi.set_coeff(mask, expr(e.value.text, e.line, "component " + e.key[0]));
    }
    m.structure_tensor = std::move(pi);
  }

  if (const RawSection* vol = section("volume")) {
    const RawEntry* coeff = find_entry(*vol, "coefficient");
    if (!coeff)
      throw parse_error("volume section needs a coefficient", 0, vol->line);
    expect_kind(*coeff, RawValue::Kind::text, "an expression string");
    bool declared = false;
    for (const RawEntry& e : vol->entries) {
      if (e.key.size() == 1 && e.key[0] == "coefficient") continue;
      if (e.key.size() == 1 && e.key[0] == "nonvanishing") {
        expect_kind(e, RawValue::Kind::boolean, "a boolean");
        declared = e.value.boolean;
        continue;
      }
      throw parse_error("unknown volume key '" + key_text(e.key) + "'", 0, e.line);
    }
    try {
      m.volume = make_volume(m.algebroid,
                             expr(coeff->value.text, coeff->line, "volume"),
                             declared);
    } catch (const domain_error& de) {
      throw parse_error(std::string("volume: ") + de.what(), 0, coeff->line);
    }
  }

  if (const RawSection* cf = section("coframe")) {
    m.coframe.assign(rank, ExteriorTensor(m.algebroid, Variance::form, 1));
    std::vector<bool> seen(rank, false);
    for (const RawEntry& e : cf->entries) {
      if (e.key.size() != 1)
        throw parse_error("bad coframe key", 0, e.line);
      std::uint32_t mask = parse_mask(e.key[0], rank, e.line);
      if (std::popcount(mask) != 1)
        throw parse_error("coframe rows are keyed by a single index", 0, e.line);
      int row = std::countr_zero(mask);
      seen[row] = true;
      expect_kind(e, RawValue::Kind::array, "an array");
      if (static_cast<int>(e.value.array.size()) != rank)
        throw parse_error("coframe row " + e.key[0] + " must have one entry per "
                          "frame section", 0, e.line);
      ExteriorTensor eta(m.algebroid, Variance::form, 1);
      for (int a = 0; a < rank; ++a)
        eta.set_coeff(1u << a,
                      expr(e.value.array[a], e.line, "coframe row " + e.key[0]));
      m.coframe[row] = std::move(eta);
    }
    for (int i = 0; i < rank; ++i)
      if (!seen[i])
        throw parse_error("missing coframe row \"" + std::to_string(i + 1) + "\"",
                          0, cf->line);
  }

  if (const RawSection* ex = section("expect")) {
    for (const RawEntry& e : ex->entries) {
      if (e.key.size() == 1 && e.key[0] == "nambu") {
        expect_kind(e, RawValue::Kind::text, "a string");
        if (e.value.text != "verified" && e.value.text != "refuted")
          throw parse_error("expect.nambu must be \"verified\" or \"refuted\"", 0,
                            e.line);
        m.expect_nambu = e.value.text;
      } else if (e.key.size() == 2 && e.key[0] == "modular") {
        expect_kind(e, RawValue::Kind::text, "an expression string");
        std::uint32_t mask = parse_mask(e.key[1], rank, e.line);
        m.expect_modular[mask] =
            expr(e.value.text, e.line, "expected pairing " + e.key[1]);
      } else {
        throw parse_error("unknown expect key '" + key_text(e.key) + "'", 0,
                          e.line);
      }
    }
  }

  return m;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str(), path);
}

std::string emit_model(const ModelFile& m) {
  const AlgebroidPresentation& A = *m.algebroid;
  std::ostringstream out;
  auto q = [](const std::string& s) { return '"' + s + '"'; };
  auto arr = [&](const std::vector<std::string>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += q(v[i]);
    }
    return s + "]";
  };
  auto exprs = [&](const std::vector<ScalarExpr>& v) {
    std::vector<std::string> s;
    for (const ScalarExpr& e : v) s.push_back(to_string(e));
    return arr(s);
  };

  if (!m.name.empty() || !m.description.empty()) {
    out << "[meta]\n";
    if (!m.name.empty()) out << "name = " << q(m.name) << "\n";
    if (!m.description.empty()) out << "description = " << q(m.description) << "\n";
    out << "\n";
  }

  out << "[chart]\ncoords = " << arr(A.chart->coords) << "\n\n";

  out << "[algebroid]\nrank = " << A.rank << "\nframe = " << arr(A.frame) << "\n";
  if (!A.symbols.empty())
    out << "symbols = "
        << arr(std::vector<std::string>(A.symbols.begin(), A.symbols.end()))
        << "\n";
  out << "\n";

  if (A.dim() > 0) {
    out << "[anchor]\n";
    for (int i = 0; i < A.rank; ++i)
      out << q(std::to_string(i + 1)) << " = " << exprs(A.anchor[i]) << "\n";
    out << "\n";
  }

  bool any_bracket = false;
  for (const auto& [key, row] : A.structure) {
    bool nonzero = false;
    for (const ScalarExpr& v : row) nonzero = nonzero || !v.is_zero_expr();
    if (!nonzero) continue;
    if (!any_bracket) {
      out << "[bracket]\n";
      any_bracket = true;
    }
    out << q(std::to_string(key.first + 1) + "," + std::to_string(key.second + 1))
        << " = " << exprs(row) << "\n";
  }
  if (any_bracket) out << "\n";

  if (m.structure_tensor) {
    out << "[nambu]\norder = " << m.structure_tensor->grade() << "\n";
    if (m.allow_order_2) out << "allow_order_2 = true\n";
    for (const auto& [mask, coeff] : m.structure_tensor->comps())
      out << q(mask_key(mask)) << " = " << q(to_string(coeff)) << "\n";
    out << "\n";
  }

  if (m.volume) {
    out << "[volume]\ncoefficient = " << q(to_string(m.volume->coeff)) << "\n"
        << "nonvanishing = " << (m.volume->nonvanishing ? "true" : "false")
        << "\n\n";
  }

  if (!m.coframe.empty()) {
    out << "[coframe]\n";
    for (std::size_t j = 0; j < m.coframe.size(); ++j) {
      std::vector<ScalarExpr> row;
      for (int a = 0; a < A.rank; ++a) row.push_back(m.coframe[j].coeff(1u << a));
      out << q(std::to_string(j + 1)) << " = " << exprs(row) << "\n";
    }
    out << "\n";
  }

  if (m.expect_nambu || !m.expect_modular.empty()) {
    out << "[expect]\n";
    if (m.expect_nambu) out << "nambu = " << q(*m.expect_nambu) << "\n";
    for (const auto& [mask, want] : m.expect_modular)
      out << "modular." << q(mask_key(mask)) << " = " << q(to_string(want)) << "\n";
    out << "\n";
  }

  std::string text = out.str();
  if (text.size() >= 2 && text[text.size() - 1] == '\n' &&
      text[text.size() - 2] == '\n')
    text.pop_back();
  return text;
}

namespace {

ModelFile make_r5_decomposable() {
  ModelFile m;
  m.name = "r5_decomposable";
  m.description = "decomposable trivector of the first three directions on a 5-chart";
  auto A = tangent_algebroid(make_chart({"x1", "x2", "x3", "x4", "x5"}));
  m.algebroid = A;
  ExteriorTensor pi(A, Variance::multivector, 3);
  pi.set_coeff(0b00111, ScalarExpr::one());
  m.structure_tensor = std::move(pi);
  m.volume = make_volume(A, ScalarExpr::one(), true);
  m.expect_nambu = "verified";
  return m;
}

ModelFile make_r4_symplectic_n2() {
  ModelFile m;
  m.name = "r4_symplectic_n2";
  m.description = "order-2 symplectic candidate that the condition refutes";
  auto A = tangent_algebroid(make_chart({"x1", "y1", "x2", "y2"}));
  m.algebroid = A;
  ExteriorTensor pi(A, Variance::multivector, 2);
  pi.set_coeff(0b0011, ScalarExpr::one());
  pi.set_coeff(0b1100, ScalarExpr::one());
  m.structure_tensor = std::move(pi);
  m.allow_order_2 = true;
  m.expect_nambu = "refuted";
  return m;
}

ModelFile make_pointalg4() {
  ModelFile m;
  m.name = "pointalg4";
  m.description = "four-dimensional algebra with scaling brackets into the last "
                  "section";
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 3}] = {0, 0, 0, 1};
  st[{1, 3}] = {0, 0, 0, 2};
  st[{2, 3}] = {0, 0, 0, 3};
  auto A = lie_algebra_point({"X1", "X2", "X3", "X4"}, st);
  m.algebroid = A;
  ExteriorTensor pi(A, Variance::multivector, 3);
  pi.set_coeff(0b0111, ScalarExpr::one());
  m.structure_tensor = std::move(pi);
  m.volume = make_volume(A, ScalarExpr::one(), true);
  m.expect_nambu = "verified";
  m.expect_modular[0b0011] = ScalarExpr::integer(-3);
  m.expect_modular[0b0101] = ScalarExpr::integer(2);
  m.expect_modular[0b0110] = ScalarExpr::integer(-1);
  return m;
}

ModelFile make_action_r1() {
  ModelFile m;
  m.name = "action_r1";
  m.description = "affine algebra acting on a line chart by scaling and "
                  "translation";
  auto chart = make_chart({"x1"});
  ScalarExpr x1 = ScalarExpr::coordinate(*chart, 0);
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 1}] = {0, 1};
  m.algebroid = action_algebroid(chart, {"a", "b"}, st, {{-x1}, {ScalarExpr::one()}});
  return m;
}

ModelFile make_cotangent_sympl_r4() {
  ModelFile m;
  m.name = "cotangent_sympl_r4";
  m.description = "cotangent algebroid of a constant symplectic structure with "
                  "its top multivector";
  auto base = tangent_algebroid(make_chart({"x1", "x2", "p1", "p2"}));
  ExteriorTensor poisson(base, Variance::multivector, 2);
  poisson.set_coeff(0b0101, ScalarExpr::one());
  poisson.set_coeff(0b1010, ScalarExpr::one());
  auto A = cotangent_algebroid_of_poisson(poisson);
  m.algebroid = A;
  ExteriorTensor pi(A, Variance::multivector, 4);
  pi.set_coeff(0b1111, ScalarExpr::one());
  m.structure_tensor = std::move(pi);
  m.volume = make_volume(A, ScalarExpr::one(), true);
  m.expect_nambu = "verified";
  return m;
}

ModelFile make_r3_expvol() {
  ModelFile m;
  m.name = "r3_expvol";
  m.description = "exponential top tensor on a 3-chart with the coordinate "
                  "coframe";
  auto A = tangent_algebroid(make_chart({"x1", "x2", "x3"}));
  m.algebroid = A;
  ExteriorTensor pi(A, Variance::multivector, 3);
  pi.set_coeff(0b111, exp(ScalarExpr::coordinate(*A->chart, 0)));
  m.structure_tensor = std::move(pi);
  m.volume = make_volume(A, ScalarExpr::one(), true);
  for (int i = 0; i < 3; ++i)
    m.coframe.push_back(ExteriorTensor::basis(A, Variance::form, 1u << i));
  m.expect_nambu = "verified";
  return m;
}

ModelFile make_r4_weighted() {
  ModelFile m;
  m.name = "r4_weighted";
  m.description = "coordinate multiple of a decomposable trivector with an "
                  "exponential volume";
  auto A = tangent_algebroid(make_chart({"x1", "x2", "x3", "x4"}));
  m.algebroid = A;
  ExteriorTensor pi(A, Variance::multivector, 3);
  pi.set_coeff(0b0111, ScalarExpr::coordinate(*A->chart, 3));
  m.structure_tensor = std::move(pi);
  m.volume = make_volume(A, exp(ScalarExpr::coordinate(*A->chart, 0)), true);
  m.expect_nambu = "verified";
  return m;
}

}  // namespace

const std::vector<std::string>& builtin_example_names() {
  static const std::vector<std::string> names = {
      "r5_decomposable", "r4_symplectic_n2",   "pointalg4", "action_r1",
      "cotangent_sympl_r4", "r3_expvol", "r4_weighted"};
  return names;
}

ModelFile builtin_example(const std::string& name) {
  if (name == "r5_decomposable") return make_r5_decomposable();
  if (name == "r4_symplectic_n2") return make_r4_symplectic_n2();
  if (name == "pointalg4") return make_pointalg4();
  if (name == "action_r1") return make_action_r1();
  if (name == "cotangent_sympl_r4") return make_cotangent_sympl_r4();
  if (name == "r3_expvol") return make_r3_expvol();
  if (name == "r4_weighted") return make_r4_weighted();
  throw domain_error("unknown built-in example '" + name + "'");
}

}  // namespace nambu
