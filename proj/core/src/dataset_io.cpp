#include "nicd/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "nicd/error.hpp"

namespace nicd {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(unquote(trim(line.substr(start, pos - start))));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_number(const std::string& token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

// Incrementally discovered category set (CSV) or a fixed declared one (ARFF).
class CategoryIndex {
 public:
  CategoryIndex() = default;
  explicit CategoryIndex(std::vector<std::string> declared) : values_(std::move(declared)), fixed_(true) {
    for (std::size_t i = 0; i < values_.size(); ++i) index_.emplace(values_[i], i);
  }

  std::optional<std::size_t> lookup(const std::string& v) {
    if (auto it = index_.find(v); it != index_.end()) return it->second;
    if (fixed_) return std::nullopt;
    values_.push_back(v);
    index_.emplace(v, values_.size() - 1);
    return values_.size() - 1;
  }

  const std::vector<std::string>& values() const { return values_; }

 private:
  std::vector<std::string> values_;
  std::unordered_map<std::string, std::size_t> index_;
  bool fixed_ = false;
};

struct RowParser {
  const std::string& source;
  std::vector<FeatureDescriptor>& features;
  std::vector<CategoryIndex>& categories;  // one per feature + class
  std::vector<Instance>& rows;

  void parse(const std::vector<std::string>& fields, std::size_t line_no) {
    const std::size_t expected = features.size() + 1;
    if (fields.size() != expected) {
      throw IngestionError(source, line_no,
                           "expected " + std::to_string(expected) + " values, found " +
                               std::to_string(fields.size()));
    }
    Instance inst;
    inst.values.resize(features.size());
    for (std::size_t f = 0; f < features.size(); ++f) {
      const auto& tok = fields[f];
      if (tok == "?" || tok.empty()) {
        inst.values[f] = kMissing;
      } else if (features[f].is_numeric()) {
        const auto v = parse_number(tok);
        if (!v) {
          throw IngestionError(source, line_no,
                               "non-numeric value '" + tok + "' for '" + features[f].name + "'");
        }
        inst.values[f] = *v;
      } else {
        const auto idx = categories[f].lookup(tok);
        if (!idx) {
          throw IngestionError(source, line_no,
                               "undeclared value '" + tok + "' for '" + features[f].name + "'");
        }
        inst.values[f] = static_cast<double>(*idx);
      }
    }
    const auto& cls = fields.back();
    if (cls == "?" || cls.empty()) throw IngestionError(source, line_no, "missing class label");
    const auto label = categories.back().lookup(cls);
    if (!label) throw IngestionError(source, line_no, "unknown class value '" + cls + "'");
    inst.label = *label;
    rows.push_back(std::move(inst));
  }
};

Dataset assemble(const std::string& name, std::vector<FeatureDescriptor> features,
                 std::vector<CategoryIndex>& categories, std::vector<Instance> rows,
                 const std::string& source) {
  for (std::size_t f = 0; f < features.size(); ++f) {
    if (!features[f].is_numeric()) {
      features[f].categories = categories[f].values();
      if (features[f].categories.empty()) {
        // A categorical column that is entirely missing still needs a value set.
        features[f].categories.push_back("?");
      }
    }
  }
  auto classes = categories.back().values();
  if (classes.empty()) throw IngestionError(source, 0, "no class values");
  return Dataset(name, std::move(features), std::move(classes), std::move(rows));
}

}  // namespace

Dataset read_csv(std::istream& in, const std::string& name, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<FeatureDescriptor> features;
  std::vector<CategoryIndex> categories;
  bool have_header = false;
  std::vector<Instance> rows;
  RowParser parser{source, features, categories, rows};

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line, ',');
    if (!have_header) {
      if (fields.size() < 2) throw IngestionError(source, line_no, "header needs at least one feature and a class");
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto colon = fields[i].rfind(':');
        if (colon == std::string::npos || colon == 0) {
          throw IngestionError(source, line_no, "header token '" + fields[i] + "' is not name:kind");
        }
        const auto col = trim(fields[i].substr(0, colon));
        const auto kind = lower(trim(fields[i].substr(colon + 1)));
        if (kind != "num" && kind != "cat") {
          throw IngestionError(source, line_no, "unknown kind '" + kind + "' in header (num|cat)");
        }
        if (i + 1 == fields.size()) {
          if (kind != "cat") throw IngestionError(source, line_no, "class column must be ':cat'");
        } else {
          features.push_back(kind == "num" ? FeatureDescriptor::numeric(col)
                                           : FeatureDescriptor{col, FeatureKind::categorical, {}});
        }
        categories.emplace_back();
      }
      have_header = true;
      continue;
    }
    parser.parse(fields, line_no);
  }
  if (!have_header) throw IngestionError(source, line_no, "missing header");
  return assemble(name, std::move(features), categories, std::move(rows), source);
}

Dataset read_arff(std::istream& in, const std::string& name, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<FeatureDescriptor> features;
  std::vector<CategoryIndex> categories;
  std::vector<std::string> attr_names;
  std::vector<bool> attr_numeric;
  std::vector<std::vector<std::string>> attr_values;
  bool in_data = false;
  std::vector<Instance> rows;
  RowParser parser{source, features, categories, rows};

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto text = trim(line);
    if (text.empty() || text.front() == '%') continue;
    if (in_data) {
      parser.parse(split_fields(text, ','), line_no);
      continue;
    }
    const auto head = lower(text.substr(0, text.find_first_of(" \t")));
    if (head == "@relation") continue;
    if (head == "@data") {
      if (attr_names.size() < 2) throw IngestionError(source, line_no, "need at least one attribute and a class");
      if (attr_numeric.back()) throw IngestionError(source, line_no, "class attribute must be nominal");
      for (std::size_t i = 0; i + 1 < attr_names.size(); ++i) {
        features.push_back(attr_numeric[i] ? FeatureDescriptor::numeric(attr_names[i])
                                           : FeatureDescriptor::categorical(attr_names[i], attr_values[i]));
      }
      for (std::size_t i = 0; i < attr_names.size(); ++i) {
        categories.push_back(attr_numeric[i] ? CategoryIndex() : CategoryIndex(attr_values[i]));
      }
      in_data = true;
      continue;
    }
    if (head != "@attribute") throw IngestionError(source, line_no, "unexpected header line '" + text + "'");
    auto rest = trim(text.substr(head.size()));
    std::string attr;
    if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
      const auto close = rest.find(rest.front(), 1);
      if (close == std::string::npos) throw IngestionError(source, line_no, "unterminated attribute name");
      attr = rest.substr(1, close - 1);
      rest = trim(rest.substr(close + 1));
    } else {
      const auto sp = rest.find_first_of(" \t{");
      if (sp == std::string::npos) throw IngestionError(source, line_no, "attribute without a type");
      attr = rest.substr(0, sp);
      rest = trim(rest.substr(sp));
    }
    if (!rest.empty() && rest.front() == '{') {
      const auto close = rest.find('}');
      if (close == std::string::npos) throw IngestionError(source, line_no, "unterminated value set");
      auto values = split_fields(std::string_view(rest).substr(1, close - 1), ',');
      if (values.empty() || (values.size() == 1 && values[0].empty())) {
        throw IngestionError(source, line_no, "empty value set for '" + attr + "'");
      }
      attr_names.push_back(attr);
      attr_numeric.push_back(false);
      attr_values.push_back(std::move(values));
    } else {
      const auto type = lower(rest);
      if (type != "numeric" && type != "real" && type != "integer") {
        throw IngestionError(source, line_no, "unsupported attribute type '" + rest + "'");
      }
      attr_names.push_back(attr);
      attr_numeric.push_back(true);
      attr_values.emplace_back();
    }
  }
  if (!in_data) throw IngestionError(source, line_no, "missing @data section");
  return assemble(name, std::move(features), categories, std::move(rows), source);
}

Dataset load_dataset(const std::filesystem::path& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) throw IngestionError(path.string(), 0, "cannot open file");
  if (format == DataFormat::automatic) {
    format = lower(path.extension().string()) == ".arff" ? DataFormat::arff : DataFormat::csv;
  }
  const auto name = path.stem().string();
  return format == DataFormat::arff ? read_arff(in, name, path.string())
                                    : read_csv(in, name, path.string());
}

void write_csv(std::ostream& out, const Dataset& ds) {
  const auto& features = ds.features();
  for (const auto& f : features) out << f.name << (f.is_numeric() ? ":num," : ":cat,");
  out << "class:cat\n";
  char buf[32];
  for (const auto& inst : ds.instances()) {
    for (std::size_t f = 0; f < features.size(); ++f) {
      const double v = inst.values[f];
      if (is_missing(v)) {
        out << '?';
      } else if (features[f].is_numeric()) {
        const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out.write(buf, end - buf);
      } else {
        out << features[f].categories[static_cast<std::size_t>(v)];
      }
      out << ',';
    }
    out << ds.classes()[inst.label] << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(out, ds);
}

}  // namespace nicd
