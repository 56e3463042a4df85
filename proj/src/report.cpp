#include "alns/report.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "alns/errors.hpp"

namespace alns {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

int StageReport::total_outer() const {
  return std::accumulate(outer_per_step.begin(), outer_per_step.end(), 0);
}

double StageReport::avg_outer() const {
  return newton_steps == 0 ? 0.0 : static_cast<double>(total_outer()) / newton_steps;
}

std::string SolveReport::to_csv() const {
  std::ostringstream out;
  out << "benchmark,element,refinements,stage,re,gamma,newton_steps,outer_per_step,"
         "total_outer,avg_outer_per_newton,newton_residuals,converged,complete\n";
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const StageReport& s = stages[i];
    out << benchmark << "," << element << "," << refinements << "," << i << "," << fmt(s.re)
        << "," << fmt(s.gamma) << "," << s.newton_steps << ",";
    for (std::size_t k = 0; k < s.outer_per_step.size(); ++k)
      out << (k ? ";" : "") << s.outer_per_step[k];
    out << "," << s.total_outer() << "," << fmt(s.avg_outer()) << ",";
    for (std::size_t k = 0; k < s.newton_residuals.size(); ++k)
      out << (k ? ";" : "") << fmt(s.newton_residuals[k]);
    out << "," << (s.converged ? 1 : 0) << "," << (complete ? 1 : 0) << "\n";
  }
  return out.str();
}

SolveReport SolveReport::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("report csv: empty");
  SolveReport rep;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) throw ParseError("report csv: bad row");
    if (first) {
      rep.benchmark = f[0];
      rep.element = f[1];
      rep.refinements = std::stoi(f[2]);
      first = false;
    }
    StageReport s;
    s.re = std::stod(f[4]);
    s.gamma = std::stod(f[5]);
    s.newton_steps = std::stoi(f[6]);
    if (!f[7].empty())
      for (const auto& t : split(f[7], ';')) s.outer_per_step.push_back(std::stoi(t));
    if (!f[10].empty())
      for (const auto& t : split(f[10], ';')) s.newton_residuals.push_back(std::stod(t));
    s.converged = f[11] == "1";
    rep.complete = f[12] == "1";
    rep.stages.push_back(std::move(s));
  }
  return rep;
}

std::string SolveReport::timings_csv() const {
  std::ostringstream out;
  out << "benchmark,stage,re,wall_seconds\n";
  for (std::size_t i = 0; i < stages.size(); ++i)
    out << benchmark << "," << i << "," << fmt(stages[i].re) << "," << fmt(stages[i].wall_seconds)
        << "\n";
  return out.str();
}

std::string mms_csv(const std::vector<MmsRow>& rows) {
  std::ostringstream out;
  out << "h,error_v,error_p,gamma,re\n";
  for (const auto& r : rows)
    out << fmt(r.h) << "," << fmt(r.error_v) << "," << fmt(r.error_p) << "," << fmt(r.gamma)
        << "," << fmt(r.re) << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace alns
