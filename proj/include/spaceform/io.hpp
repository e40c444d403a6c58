#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "spaceform/reconstruct.hpp"
#include "spaceform/space_form.hpp"
#include "spaceform/twistor.hpp"

namespace spaceform::io {

// Fixed formatting so identical inputs give byte-identical files.
std::string format_number(double x);

// Grid-sampled columns. Rows are ordered with v varying fastest.
struct Table {
  Grid grid;
  std::vector<std::string> names;
  std::vector<Field> columns;

  const Field& column(const std::string& name) const;  // throws ParseError
  bool has(const std::string& name) const;
};

void write_table(std::ostream& out, const Table& t);
// The grid is inferred from the u,v columns, which must form a uniform tensor grid.
Table read_table(std::istream& in);
Table read_table(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const Table& t);

Table fundamental_table(const FundamentalData& d);
FundamentalData fundamental_from_table(const Table& t, const SpaceFormModel& model);

// W,X,Y,Z (and Δ) as <name><branch>_re / _im column pairs; branch 0 is '+'.
Table twistor_table(const TwistorInvariants& inv);
TwistorInvariants twistor_from_table(const Table& t, SurfaceCase c);

// One file per frame column: T1.csv T2.csv N1.csv N2.csv F.csv with columns u,v,x1..xd.
inline constexpr std::array<const char*, 5> kFrameColumns = {"T1", "T2", "N1", "N2", "F"};
void write_frames(const std::filesystem::path& dir, const FrameField& frames);
FrameField read_frames(const std::filesystem::path& dir, const SpaceFormModel& model);

}  // namespace spaceform::io
