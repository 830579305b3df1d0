#include "gaussbreak/documents.hpp"

#include "gaussbreak/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gaussbreak {

using nlohmann::json;

const char* kind_name(const Object& obj) {
  struct Visitor {
    const char* operator()(const GaussianState&) const { return "state"; }
    const char* operator()(const GaussianChannel&) const { return "channel"; }
    const char* operator()(const GaussianObservable&) const { return "observable"; }
    const char* operator()(const GaussianPostprocessing&) const { return "postprocessing"; }
  };
  return std::visit(Visitor{}, obj);
}

namespace {

class Reader {
 public:
  Reader(const json& doc, std::string source) : doc_(doc), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw InvalidInput(source_ + ": " + field + ": " + msg);
  }

  const json& field(const std::string& name) const {
    auto it = doc_.find(name);
    if (it == doc_.end()) fail(name, "missing required field");
    return *it;
  }

  std::size_t count(const std::string& name) const {
    const json& v = field(name);
    if (!v.is_number_integer() || v.get<long long>() < 1) fail(name, "expected an integer >= 1");
    return v.get<std::size_t>();
  }

  double number(const json& v, const std::string& where) const {
    if (!v.is_number()) fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where, "non-finite number");
    return d;
  }

  RealMatrix matrix(const std::string& name, Eigen::Index rows, Eigen::Index cols) const {
    const json& v = field(name);
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows)
      fail(name, "expected an array of " + std::to_string(rows) + " rows");
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const json& row = v[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
        fail(name, "row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
      for (Eigen::Index j = 0; j < cols; ++j)
        m(i, j) = number(row[static_cast<std::size_t>(j)],
                         name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
  }

  RealVector vector(const std::string& name, Eigen::Index n) const {
    const json& v = field(name);
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != n)
      fail(name, "expected an array of " + std::to_string(n) + " numbers");
    RealVector out(n);
    for (Eigen::Index i = 0; i < n; ++i)
      out(i) = number(v[static_cast<std::size_t>(i)], name + "[" + std::to_string(i) + "]");
    return out;
  }

  void only(const std::set<std::string>& allowed) const {
    for (auto it = doc_.begin(); it != doc_.end(); ++it)
      if (!allowed.count(it.key()) && it.key() != "format_version" && it.key() != "kind" &&
          it.key() != "comment")
        fail(it.key(), "unknown field");
  }

  template <typename F>
  auto build(F&& f) const {
    try {
      return f();
    } catch (const InvalidInput& e) {
      throw InvalidInput(source_ + ": " + e.what());
    }
  }

 private:
  const json& doc_;
  std::string source_;
};

Eigen::Index dim2(std::size_t modes) { return static_cast<Eigen::Index>(2 * modes); }

json header(const char* kind) { return json{{"format_version", kFormatVersion}, {"kind", kind}}; }

}  // namespace

Object parse_object(const json& doc, const std::string& source) {
  Reader in(doc, source);
  if (!doc.is_object()) in.fail("document", "expected a JSON object");
  const json& version = in.field("format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    in.fail("format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  if (auto it = doc.find("comment"); it != doc.end() && !it->is_string())
    in.fail("comment", "expected a string");
  const json& kind_field = in.field("kind");
  if (!kind_field.is_string()) in.fail("kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();

  if (kind == "state") {
    in.only({"modes", "V", "r"});
    const std::size_t n = in.count("modes");
    const RealMatrix v = in.matrix("V", dim2(n), dim2(n));
    const RealVector r = in.vector("r", dim2(n));
    return in.build([&] { return Object{GaussianState(v, r)}; });
  }
  if (kind == "channel") {
    in.only({"in_modes", "out_modes", "A", "B", "c"});
    const std::size_t n_in = in.count("in_modes");
    const std::size_t n_out = in.count("out_modes");
    const RealMatrix a = in.matrix("A", dim2(n_in), dim2(n_out));
    const RealMatrix b = in.matrix("B", dim2(n_out), dim2(n_out));
    const RealVector c = in.vector("c", dim2(n_out));
    return in.build([&] { return Object{GaussianChannel(n_in, n_out, a, b, c)}; });
  }
  if (kind == "observable") {
    in.only({"modes", "outcome_dim", "K", "L", "m"});
    const std::size_t n = in.count("modes");
    const auto m_dim = static_cast<Eigen::Index>(in.count("outcome_dim"));
    const RealMatrix k = in.matrix("K", dim2(n), m_dim);
    const RealMatrix l = in.matrix("L", m_dim, m_dim);
    const RealVector m = in.vector("m", m_dim);
    return in.build([&] { return Object{GaussianObservable(k, l, m)}; });
  }
  if (kind == "postprocessing") {
    in.only({"source_dim", "target_dim", "A", "B", "c"});
    const auto src = static_cast<Eigen::Index>(in.count("source_dim"));
    const auto dst = static_cast<Eigen::Index>(in.count("target_dim"));
    const RealMatrix a = in.matrix("A", src, dst);
    const RealMatrix b = in.matrix("B", dst, dst);
    const RealVector c = in.vector("c", dst);
    return in.build([&] { return Object{GaussianPostprocessing(a, b, c)}; });
  }
  in.fail("kind", "unknown kind '" + kind + "'");
}

Object load_object(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw InvalidInput(path.string() + ": cannot open file");
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path.string() + ": JSON parse error: " + e.what());
  }
  return parse_object(doc, path.string());
}

template <typename T>
T load_as(const std::filesystem::path& path) {
  Object obj = load_object(path);
  if (auto* p = std::get_if<T>(&obj)) return std::move(*p);
  const char* want = "postprocessing";
  if constexpr (std::is_same_v<T, GaussianState>)
    want = "state";
  else if constexpr (std::is_same_v<T, GaussianChannel>)
    want = "channel";
  else if constexpr (std::is_same_v<T, GaussianObservable>)
    want = "observable";
  throw InvalidInput(path.string() + ": kind: expected '" + want + "', got '" + kind_name(obj) +
                     "'");
}

template GaussianState load_as<GaussianState>(const std::filesystem::path&);
template GaussianChannel load_as<GaussianChannel>(const std::filesystem::path&);
template GaussianObservable load_as<GaussianObservable>(const std::filesystem::path&);
template GaussianPostprocessing load_as<GaussianPostprocessing>(const std::filesystem::path&);

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_document(const GaussianState& st) {
  json d = header("state");
  d["modes"] = st.modes();
  d["V"] = to_json(st.covariance());
  d["r"] = to_json(st.displacement());
  return d;
}

json to_document(const GaussianChannel& ch) {
  json d = header("channel");
  d["in_modes"] = ch.in_modes();
  d["out_modes"] = ch.out_modes();
  d["A"] = to_json(ch.a());
  d["B"] = to_json(ch.b());
  d["c"] = to_json(ch.c());
  return d;
}

json to_document(const GaussianObservable& obs) {
  json d = header("observable");
  d["modes"] = obs.modes();
  d["outcome_dim"] = obs.outcome_dim();
  d["K"] = to_json(obs.k());
  d["L"] = to_json(obs.l());
  d["m"] = to_json(obs.m());
  return d;
}

json to_document(const GaussianPostprocessing& pp) {
  json d = header("postprocessing");
  d["source_dim"] = pp.source_dim();
  d["target_dim"] = pp.target_dim();
  d["A"] = to_json(pp.a());
  d["B"] = to_json(pp.b());
  d["c"] = to_json(pp.c());
  return d;
}

json to_document(const Object& obj) {
  return std::visit([](const auto& o) { return to_document(o); }, obj);
}

namespace {

void write_number(std::ostream& os, double d) {
  if (!std::isfinite(d)) {
    os << "null";
    return;
  }
  if (d == 0.0) d = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  os << buf;
}

void write(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_report(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace gaussbreak
