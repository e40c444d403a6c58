#include "spaceform/io.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spaceform/errors.hpp"

namespace spaceform::io {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

const Field& Table::column(const std::string& name) const {
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c] == name) return columns[c];
  throw ParseError("missing column '" + name + "'");
}

bool Table::has(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

void write_table(std::ostream& out, const Table& t) {
  out << "u,v";
  for (const auto& n : t.names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < t.grid.nu; ++i)
    for (std::size_t j = 0; j < t.grid.nv; ++j) {
      out << format_number(t.grid.u(i)) << ',' << format_number(t.grid.v(j));
      for (const auto& c : t.columns) out << ',' << format_number(c(i, j));
      out << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.back()))) cell.pop_back();
    while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.front()))) cell.erase(0, 1);
    out.push_back(cell);
  }
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw ParseError("line " + std::to_string(line) + ": bad number '" + s + "'");
  return x;
}

}  // namespace

Table read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty table");
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "u" || header[1] != "v")
    throw ParseError("table header must start with u,v");
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " cells");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c, lineno));
    rows.push_back(std::move(row));
  }
  if (rows.size() < 4) throw ParseError("table has too few rows");
  std::size_t nv = 1;
  while (nv < rows.size() && rows[nv][0] == rows[0][0]) ++nv;
  if (rows.size() % nv != 0) throw ParseError("rows do not form a tensor grid");
  Grid g;
  g.nu = rows.size() / nv;
  g.nv = nv;
  g.u0 = rows[0][0];
  g.v0 = rows[0][1];
  g.du = g.nu > 1 ? (rows[(g.nu - 1) * nv][0] - g.u0) / static_cast<double>(g.nu - 1) : 0.0;
  g.dv = nv > 1 ? (rows[nv - 1][1] - g.v0) / static_cast<double>(nv - 1) : 0.0;
  try {
    g.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("inferred grid is invalid: ") + e.what());
  }
  const double tol = 1e-9 * std::max({1.0, std::abs(g.u0), std::abs(g.v0)});
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = k / nv, j = k % nv;
    if (std::abs(rows[k][0] - g.u(i)) > tol || std::abs(rows[k][1] - g.v(j)) > tol)
      throw ParseError("row " + std::to_string(k + 2) + " is off the uniform grid");
  }
  Table t;
  t.grid = g;
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (t.has(header[c])) throw ParseError("duplicate column '" + header[c] + "'");
    t.names.push_back(header[c]);
    Field f(g);
    for (std::size_t k = 0; k < rows.size(); ++k) f[k] = rows[k][c];
    t.columns.push_back(std::move(f));
  }
  return t;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return read_table(in);
}

void write_table(const std::filesystem::path& path, const Table& t) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_table(out, t);
}

Table fundamental_table(const FundamentalData& d) {
  Table t;
  t.grid = d.grid;
  for (std::size_t f = 0; f < kFieldNames.size(); ++f) {
    t.names.emplace_back(kFieldNames[f]);
    t.columns.push_back(d.fields[f]);
  }
  return t;
}

FundamentalData fundamental_from_table(const Table& t, const SpaceFormModel& model) {
  FundamentalData d = FundamentalData::zeros(model, t.grid);
  for (std::size_t f = 0; f < kFieldNames.size(); ++f) d.fields[f] = t.column(std::string(kFieldNames[f]));
  d.validate();
  return d;
}

namespace {

const std::array<const char*, 4> kInvariantNames = {"W", "X", "Y", "Z"};

template <class Inv>
auto* invariant(Inv& inv, std::size_t n) {
  switch (n) {
    case 0: return &inv.W;
    case 1: return &inv.X;
    case 2: return &inv.Y;
    default: return &inv.Z;
  }
}

}  // namespace

Table twistor_table(const TwistorInvariants& inv) {
  Table t;
  t.grid = inv.grid;
  auto add = [&](const std::string& base, const ComplexField& f) {
    t.names.push_back(base + "_re");
    t.columns.push_back(real_part(f));
    t.names.push_back(base + "_im");
    t.columns.push_back(imag_part(f));
  };
  for (int s = 0; s < 2; ++s) {
    for (std::size_t n = 0; n < 4; ++n)
      add(std::string(kInvariantNames[n]) + std::to_string(s), (*invariant(inv, n))[s]);
    add("delta" + std::to_string(s), inv.delta[s]);
  }
  return t;
}

TwistorInvariants twistor_from_table(const Table& t, SurfaceCase c) {
  TwistorInvariants inv;
  inv.surface_case = c;
  inv.grid = t.grid;
  const int nb = is_lorentzian(c) ? 1 : 2;
  for (std::size_t n = 0; n < 4; ++n)
    for (int s = 0; s < 2; ++s) {
      auto& f = (*invariant(inv, n))[s];
      const std::string base = std::string(kInvariantNames[n]) + std::to_string(s);
      if (s >= nb && !t.has(base + "_re")) {
        f = (*invariant(inv, n))[0].map([](Complex z) { return std::conj(z); });
        continue;
      }
      const Field& re = t.column(base + "_re");
      f = ComplexField(t.grid);
      for (std::size_t k = 0; k < t.grid.size(); ++k)
        f[k] = Complex(re[k], t.has(base + "_im") ? t.column(base + "_im")[k] : 0.0);
    }
  inv.refresh_delta();
  return inv;
}

void write_frames(const std::filesystem::path& dir, const FrameField& ff) {
  std::filesystem::create_directories(dir);
  const auto n = static_cast<std::size_t>(ff.model.ambient.dim());
  for (std::size_t col = 0; col < 5; ++col) {
    Table t;
    t.grid = ff.grid;
    for (std::size_t r = 0; r < n; ++r) {
      t.names.push_back("x" + std::to_string(r + 1));
      Field f(ff.grid);
      for (std::size_t k = 0; k < ff.grid.size(); ++k)
        f[k] = ff.frames[k](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col));
      t.columns.push_back(std::move(f));
    }
    write_table(dir / (std::string(kFrameColumns[col]) + ".csv"), t);
  }
}

FrameField read_frames(const std::filesystem::path& dir, const SpaceFormModel& model) {
  FrameField ff;
  ff.model = model;
  const auto n = static_cast<std::size_t>(model.ambient.dim());
  for (std::size_t col = 0; col < 5; ++col) {
    const auto path = dir / (std::string(kFrameColumns[col]) + ".csv");
    if (!std::filesystem::exists(path)) throw ParseError("missing frame file '" + path.string() + "'");
    const Table t = read_table(path);
    if (col == 0) {
      ff.grid = t.grid;
      ff.frames.assign(t.grid.size(), Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), 5));
    } else if (!(t.grid == ff.grid)) {
      throw ParseError("frame files disagree on the grid");
    }
    for (std::size_t r = 0; r < n; ++r) {
      const Field& f = t.column("x" + std::to_string(r + 1));
      for (std::size_t k = 0; k < t.grid.size(); ++k)
        ff.frames[k](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = f[k];
    }
  }
  return ff;
}

}  // namespace spaceform::io
