#include "v2g/run_record.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "v2g/errors.hpp"
#include "v2g/format.hpp"

namespace v2g {

namespace {

constexpr const char* kHeader =
    "kind,epoch,k,selected_index,selected_rate_kw,selected_total,best_rate_kw,best_total,"
    "available,oracle_calls,wall_ms,step,t_h,rate_kw,grid_kw,soc";
constexpr std::size_t kColumns = 16;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

std::size_t to_size(const std::string& s) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw DomainError("run record: bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

void write_run_csv(std::ostream& out, const RunRecord& record) {
  out << kRunRecordSchema << '\n' << kHeader << '\n';
  if (record.empty_fleet) {
    out << "empty" << std::string(kColumns - 1, ',') << '\n';
  }
  for (const auto& r : record.iterations) {
    out << "iter," << r.epoch << ',' << r.k << ',' << r.selected_index << ','
        << format_double(r.selected_rate_kw) << ',' << r.selected_total.to_string() << ','
        << format_double(r.best_rate_kw) << ',' << r.best_total.to_string() << ','
        << r.available << ',' << r.oracle_calls << ',' << format_double(r.wall_ms)
        << ",,,,,\n";
  }
  for (const auto& r : record.timesteps) {
    out << "step," << r.epoch << ",,,,,,," << r.available << ",,," << r.step << ','
        << format_double(r.t_h) << ',' << format_double(r.rate_kw) << ','
        << format_double(r.grid_kw) << ',';
    for (std::size_t i = 0; i < r.soc.size(); ++i) {
      if (i) out << ';';
      out << format_double(r.soc[i]);
    }
    out << '\n';
  }
}

RunRecord read_run_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRunRecordSchema) {
    throw DomainError("run record: missing or unsupported schema line");
  }
  if (!std::getline(in, line) || line != kHeader) {
    throw DomainError("run record: unexpected header");
  }
  RunRecord record;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line, ',');
    if (c.size() != kColumns) {
      throw DomainError("run record: expected " + std::to_string(kColumns) + " cells, got " +
                        std::to_string(c.size()));
    }
    if (c[0] == "empty") {
      record.empty_fleet = true;
    } else if (c[0] == "iter") {
      IterationRow r;
      r.epoch = to_size(c[1]);
      r.k = to_size(c[2]);
      r.selected_index = to_size(c[3]);
      r.selected_rate_kw = parse_double(c[4]);
      r.selected_total = FixedCost::parse(c[5]);
      r.best_rate_kw = parse_double(c[6]);
      r.best_total = FixedCost::parse(c[7]);
      r.available = to_size(c[8]);
      r.oracle_calls = to_size(c[9]);
      r.wall_ms = parse_double(c[10]);
      record.iterations.push_back(r);
    } else if (c[0] == "step") {
      TimestepRow r;
      r.epoch = to_size(c[1]);
      r.available = to_size(c[8]);
      r.step = to_size(c[11]);
      r.t_h = parse_double(c[12]);
      r.rate_kw = parse_double(c[13]);
      r.grid_kw = parse_double(c[14]);
      if (!c[15].empty()) {
        for (const auto& s : split(c[15], ';')) r.soc.push_back(parse_double(s));
      }
      record.timesteps.push_back(std::move(r));
    } else {
      throw DomainError("run record: unknown row kind '" + c[0] + "'");
    }
  }
  return record;
}

void export_run(const RunRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("export_run: cannot write " + path.string());
  write_run_csv(out, record);
  if (!out) throw std::runtime_error("export_run: write failed for " + path.string());
}

RunRecord import_run(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("import_run: cannot read " + path.string());
  return read_run_csv(in);
}

}  // namespace v2g
