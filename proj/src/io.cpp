#include "gdnls/io.hpp"

#include <fstream>
#include <sstream>

namespace gdnls {

Json field_to_json(const Field& f) {
  Json re = Json::array();
  Json im = Json::array();
  for (const cplx& z : f.values()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"L", f.grid().length()}, {"N", f.size()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Field field_from_json(const Json& j) {
  try {
    const double length = j.at("L").get<double>();
    const auto n = j.at("N").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != n || im.size() != n) {
      throw InvalidArgument("field file: re/im must both have N entries");
    }
    std::vector<cplx> values(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = {re[k].get<double>(), im[k].get<double>()};
    return Field(Grid(length, n), std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field file: ") + e.what());
  }
}

void write_field(const std::filesystem::path& path, const Field& f) {
  write_atomic(path, field_to_json(f).dump());
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open field file " + path.string());
  try {
    return field_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("field file " + path.string() + ": " + e.what());
  }
}

Json params_to_json(const Params& p) {
  return {{"sigma", p.sigma}, {"omega", p.omega}, {"c", p.c}, {"alpha", p.alpha}, {"beta", p.beta}};
}

Json certificate_to_json(const Certificate& c) {
  return {{"params", params_to_json(c.params)},
          {"action", c.action},
          {"level", c.level},
          {"virial", c.virial},
          {"strategy", to_string(c.strategy)}};
}

Json scan_row_to_json(const ScanRow& r) {
  return {{"params", params_to_json(r.params)},
          {"action", r.action},
          {"level", r.level},
          {"virial", r.virial},
          {"margin", r.margin()},
          {"accepted", r.accepted()}};
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw InvalidArgument("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace gdnls
