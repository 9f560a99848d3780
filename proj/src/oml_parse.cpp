#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "omloq/error.hpp"
#include "omloq/oml.hpp"

namespace omloq {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && space(line[i])) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && !space(line[i]) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

// Shared by the text and JSON front ends once labels and pairs are known.
struct Draft {
  std::string name;
  std::vector<std::string> labels;
  std::map<std::string, Elem, std::less<>> index;
  std::vector<std::pair<Elem, Elem>> leq;
  std::vector<int> perp;  // -1 = undeclared
  std::size_t elements_line = 0;
};

}  // namespace

Oml parse_lattice(std::string_view text, const ParseOptions& opts) {
  Draft d;
  bool have_elements = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const Token& dir = toks[0];

    auto lookup = [&](const Token& t) -> Elem {
      if (!have_elements) {
        throw ParseError(line_no, t.column,
                         "element '" + std::string(t.text) +
                             "' referenced before 'elements'");
      }
      auto it = d.index.find(t.text);
      if (it == d.index.end()) {
        throw ParseError(line_no, t.column,
                         "undeclared element '" + std::string(t.text) + "'");
      }
      return it->second;
    };
    auto arity = [&](std::size_t want) {
      if (toks.size() != want + 1) {
        const std::size_t col =
            toks.size() > want + 1 ? toks[want + 1].column : line.size() + 1;
        throw ParseError(line_no, col,
                         "'" + std::string(dir.text) + "' expects " +
                             std::to_string(want) + " arguments");
      }
    };

    if (dir.text == "name") {
      if (toks.size() < 2) {
        throw ParseError(line_no, line.size() + 1, "'name' expects a value");
      }
      std::string_view rest = line.substr(toks[1].column - 1);
      std::size_t hash = rest.find('#');
      if (hash != std::string_view::npos) rest = rest.substr(0, hash);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' ||
                               rest.back() == '\r')) {
        rest.remove_suffix(1);
      }
      d.name = std::string(rest);
    } else if (dir.text == "elements") {
      if (have_elements) {
        throw ParseError(line_no, dir.column, "'elements' declared twice");
      }
      if (toks.size() < 2) {
        throw ParseError(line_no, line.size() + 1,
                         "'elements' expects at least one label");
      }
      if (toks.size() - 1 > opts.max_elements) {
        throw ParseError(line_no, toks[opts.max_elements + 1].column,
                         "too many elements (limit " +
                             std::to_string(opts.max_elements) + ")");
      }
      for (std::size_t i = 1; i < toks.size(); ++i) {
        std::string label(toks[i].text);
        if (d.index.count(label)) {
          throw ParseError(line_no, toks[i].column,
                           "duplicate element '" + label + "'");
        }
        d.index.emplace(label, static_cast<Elem>(d.labels.size()));
        d.labels.push_back(std::move(label));
      }
      d.perp.assign(d.labels.size(), -1);
      d.elements_line = line_no;
      have_elements = true;
    } else if (dir.text == "leq") {
      arity(2);
      d.leq.emplace_back(lookup(toks[1]), lookup(toks[2]));
    } else if (dir.text == "perp") {
      arity(2);
      const Elem a = lookup(toks[1]);
      const Elem b = lookup(toks[2]);
      if ((d.perp[a] != -1 && d.perp[a] != b) ||
          (d.perp[b] != -1 && d.perp[b] != a)) {
        throw ParseError(line_no, toks[1].column,
                         "conflicting perp for '" + d.labels[a] + "' or '" +
                             d.labels[b] + "'");
      }
      d.perp[a] = b;
      d.perp[b] = a;
    } else {
      throw ParseError(line_no, dir.column,
                       "unknown directive '" + std::string(dir.text) + "'");
    }
  }
  if (!have_elements) {
    throw ParseError(line_no == 0 ? 1 : line_no, 1, "no 'elements' directive");
  }
  std::vector<Elem> perp(d.labels.size());
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    if (d.perp[i] < 0) {
      throw ParseError(d.elements_line, 1,
                       "perp is not a total map: '" + d.labels[i] +
                           "' has no orthocomplement");
    }
    perp[i] = static_cast<Elem>(d.perp[i]);
  }
  return Oml::from_order(d.name, std::move(d.labels), d.leq, std::move(perp));
}

namespace {

// Byte offset to 1-based (line, column).
std::pair<std::size_t, std::size_t> locate(std::string_view text,
                                           std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Oml parse_lattice_json(std::string_view text, const ParseOptions& opts) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(line, col, "malformed JSON");
  }
  auto fail = [](const std::string& what) { throw ParseError(1, 1, what); };
  if (!j.is_object()) fail("top level must be an object");
  Draft d;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("'name' must be a string");
    d.name = j["name"].get<std::string>();
  }
  if (!j.contains("elements") || !j["elements"].is_array() ||
      j["elements"].empty()) {
    fail("'elements' must be a nonempty array of labels");
  }
  if (j["elements"].size() > opts.max_elements) {
    fail("too many elements (limit " + std::to_string(opts.max_elements) + ")");
  }
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) fail("element labels must be strings");
    std::string label = e.get<std::string>();
    if (d.index.count(label)) fail("duplicate element '" + label + "'");
    d.index.emplace(label, static_cast<Elem>(d.labels.size()));
    d.labels.push_back(std::move(label));
  }
  auto lookup = [&](const nlohmann::json& v) -> Elem {
    if (!v.is_string()) fail("element references must be strings");
    auto it = d.index.find(v.get<std::string>());
    if (it == d.index.end()) {
      fail("undeclared element '" + v.get<std::string>() + "'");
    }
    return it->second;
  };
  if (j.contains("leq")) {
    if (!j["leq"].is_array()) fail("'leq' must be an array of pairs");
    for (const auto& p : j["leq"]) {
      if (!p.is_array() || p.size() != 2) fail("'leq' entries must be pairs");
      d.leq.emplace_back(lookup(p[0]), lookup(p[1]));
    }
  }
  d.perp.assign(d.labels.size(), -1);
  if (!j.contains("perp") || !j["perp"].is_object()) {
    fail("'perp' must be an object");
  }
  for (const auto& [k, v] : j["perp"].items()) {
    const Elem a = lookup(nlohmann::json(k));
    const Elem b = lookup(v);
    if ((d.perp[a] != -1 && d.perp[a] != b) ||
        (d.perp[b] != -1 && d.perp[b] != a)) {
      fail("conflicting perp for '" + d.labels[a] + "' or '" + d.labels[b] +
           "'");
    }
    d.perp[a] = b;
    d.perp[b] = a;
  }
  std::vector<Elem> perp(d.labels.size());
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    if (d.perp[i] < 0) {
      fail("perp is not a total map: '" + d.labels[i] +
           "' has no orthocomplement");
    }
    perp[i] = static_cast<Elem>(d.perp[i]);
  }
  return Oml::from_order(d.name, std::move(d.labels), d.leq, std::move(perp));
}

Oml load_lattice(const std::filesystem::path& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Oml l = path.extension() == ".json" ? parse_lattice_json(text, opts)
                                      : parse_lattice(text, opts);
  if (l.name().empty()) {
    // keep the tables; only the display name comes from the file
    std::vector<Elem> perp(l.size());
    std::vector<std::pair<Elem, Elem>> leq;
    for (std::size_t a = 0; a < l.size(); ++a) {
      perp[a] = l.perp(static_cast<Elem>(a));
      for (std::size_t b = 0; b < l.size(); ++b) {
        if (l.leq(static_cast<Elem>(a), static_cast<Elem>(b))) {
          leq.emplace_back(static_cast<Elem>(a), static_cast<Elem>(b));
        }
      }
    }
    return Oml::from_order(path.stem().string(), l.labels(), leq,
                           std::move(perp));
  }
  return l;
}

std::string to_lattice_text(const Oml& l) {
  std::ostringstream os;
  if (!l.name().empty()) os << "name " << l.name() << "\n";
  os << "elements";
  for (const std::string& s : l.labels()) os << ' ' << s;
  os << "\n";
  const std::size_t n = l.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !l.leq(a, b)) continue;
      // covering pairs only
      Bits between = l.up(a) & l.down(b);
      if (between.count() == 2) {
        os << "leq " << l.label(a) << ' ' << l.label(b) << "\n";
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const Elem p = l.perp(a);
    if (a <= p) os << "perp " << l.label(a) << ' ' << l.label(p) << "\n";
  }
  return os.str();
}

MorphismDoc parse_morphism(std::string_view text) {
  MorphismDoc doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    std::vector<Token> toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string_view dir = toks[0].text;
    const std::size_t want = dir == "iso" ? 3 : 2;
    if (dir != "iso" && dir != "src" && dir != "dst") {
      throw ParseError(line_no, toks[0].column,
                       "unknown directive '" + std::string(dir) + "'");
    }
    if (toks.size() != want) {
      const std::size_t col =
          toks.size() > want ? toks[want].column : line.size() + 1;
      throw ParseError(line_no, col,
                       "'" + std::string(dir) + "' expects " +
                           std::to_string(want - 1) + " arguments");
    }
    if (dir == "iso") {
      doc.pairs.push_back({std::string(toks[1].text), std::string(toks[2].text),
                           line_no, toks[1].column, toks[2].column});
      continue;
    }
    auto& slot = dir == "src" ? doc.src : doc.dst;
    if (slot) {
      throw ParseError(line_no, toks[0].column,
                       "'" + std::string(dir) + "' given twice");
    }
    slot = std::string(toks[1].text);
  }
  return doc;
}

OrthoIso resolve_morphism(const MorphismDoc& doc, const OmlPtr& src,
                          const OmlPtr& dst) {
  if (src->size() != dst->size()) {
    throw ParseError(1, 1, "endpoints have " + std::to_string(src->size()) +
                               " and " + std::to_string(dst->size()) +
                               " elements");
  }
  std::vector<int> map(src->size(), -1);
  for (const MorphismDoc::Pair& p : doc.pairs) {
    auto a = src->find(p.from);
    if (!a) {
      throw ParseError(p.line, p.from_column,
                       "'" + p.from + "' is not an element of the source");
    }
    auto b = dst->find(p.to);
    if (!b) {
      throw ParseError(p.line, p.to_column,
                       "'" + p.to + "' is not an element of the target");
    }
    if (map[*a] >= 0) {
      throw ParseError(p.line, p.from_column,
                       "'" + p.from + "' is mapped twice");
    }
    map[*a] = *b;
  }
  OrthoIso g{src, dst, {}};
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (map[x] < 0) {
      throw ParseError(1, 1, "no image for '" +
                                 src->label(static_cast<Elem>(x)) + "'");
    }
    g.map.push_back(static_cast<Elem>(map[x]));
  }
  return g;
}

MorphismDoc load_morphism(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_morphism(buf.str());
}

}  // namespace omloq
