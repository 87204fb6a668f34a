#include "formats.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace salemca::formats {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string rat_num(const BigRat& q) { return boost::multiprecision::numerator(q).str(); }
std::string rat_den(const BigRat& q) { return boost::multiprecision::denominator(q).str(); }

ordered_json rational_object(const BigRat& q) {
  return ordered_json{{"num", rat_num(q)}, {"den", rat_den(q)}};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Refuted: return "refuted";
    case Verdict::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::string dyadic_rows_csv(int k, const auto& value_at) {
  std::string out = "x_num,x_den,f_num,f_den\n";
  const BigInt den = BigInt(1) << k;
  for (BigInt m = 0; m <= den; ++m) {
    const BigRat f = value_at(m);
    out += m.str();
    out += ',';
    out += den.str();
    out += ',';
    out += rat_num(f);
    out += ',';
    out += rat_den(f);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string counts_csv(const CountSeries& counts) {
  std::string out = "n,num,cum\n";
  for (int n = 0; n <= counts.horizon; ++n) {
    out += std::to_string(n);
    out += ',';
    out += counts.num[n].str();
    out += ',';
    out += counts.cum[n].str();
    out += '\n';
  }
  return out;
}

std::string table_csv(const FunctionTable& table) {
  return dyadic_rows_csv(table.k, [&](const BigInt& m) {
    return table.values[static_cast<std::size_t>(m.convert_to<long long>())];
  });
}

std::string salem_csv(const SalemParams& params, int k) {
  return dyadic_rows_csv(
      k, [&](const BigInt& m) { return eval_dyadic(params, Dyadic::from_numerator(m, k)); });
}

std::string reports_json(const std::vector<ClassificationReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const ClassificationReport& r : reports) {
    ordered_json item;
    item["rule"] = r.rule.name;
    item["aliases"] = r.rule.aliases;
    item["k_max"] = r.k_max;
    item["half_value"] = rational_object(r.half_value);
    item["verdict"] = verdict_name(r.verdict);
    item["M"] = r.salem_m ? ordered_json(r.salem_m->str()) : ordered_json(nullptr);
    if (r.salem_m) {
      item["alpha"] = ordered_json{{"num", "1"}, {"den", BigInt(*r.salem_m + 1).str()}};
    } else {
      item["alpha"] = nullptr;
    }
    item["refutation_k"] = r.refutation_k ? ordered_json(*r.refutation_k) : ordered_json(nullptr);
    ordered_json checks = ordered_json::array();
    for (const HalfValueCheck& c : r.checks) {
      checks.push_back(ordered_json{{"k", c.k},
                                    {"num", rat_num(c.value)},
                                    {"den", rat_den(c.value)},
                                    {"reciprocal_integral", c.reciprocal_integral}});
    }
    item["checks"] = std::move(checks);
    arr.push_back(std::move(item));
  }
  return arr.dump(2) + "\n";
}

std::string pattern_pbm(const Grid2D& grid) {
  std::string out = "P1\n" + std::to_string(grid.cols) + " " + std::to_string(grid.rows) + "\n";
  for (int r = 0; r < grid.rows; ++r) {
    int line_len = 0;
    for (int c = 0; c < grid.cols; ++c) {
      out += grid.at(r, c) ? '1' : '0';
      if (++line_len == 70 && c + 1 < grid.cols) {
        out += '\n';
        line_len = 0;
      }
    }
    out += '\n';
  }
  return out;
}

std::string sidecar_json(const std::string& command_line) {
  ordered_json meta;
  meta["tool"] = "salemca";
  meta["format_version"] = 1;
  meta["command"] = command_line;
  return meta.dump(2) + "\n";
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_with_sidecar(const std::filesystem::path& path, const std::string& contents,
                        const std::string& command_line) {
  atomic_write(path, contents);
  std::filesystem::path meta = path;
  meta += ".meta.json";
  atomic_write(meta, sidecar_json(command_line));
}

}  // namespace salemca::formats
