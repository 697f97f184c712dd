#include "newtongraph/io.hpp"

#include <fstream>
#include <sstream>

#include "newtongraph/error.hpp"

namespace newtongraph {

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::Parse, "expected a number or [re, im], got " + j.dump());
}

nlohmann::json to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "polynomial must be a JSON object");
  auto list = [](const nlohmann::json& arr) {
    if (!arr.is_array() || arr.empty()) throw Error(ErrorCode::Parse, "expected a non-empty array");
    std::vector<Complex> out;
    for (const auto& x : arr) out.push_back(complex_from_json(x));
    return out;
  };
  if (j.contains("coeffs")) return Polynomial(list(j.at("coeffs")));
  if (j.contains("roots")) {
    const auto roots = list(j.at("roots"));
    return Polynomial::from_roots(roots);
  }
  throw Error(ErrorCode::Parse, "polynomial needs \"coeffs\" or \"roots\"");
}

nlohmann::json to_json(const Polynomial& p) {
  auto arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
  return {{"coeffs", arr}};
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

Polynomial read_polynomial(const std::string& path) { return polynomial_from_json(read_json_file(path)); }

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + path);
}

}  // namespace newtongraph
