#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "skewrd/resolvent.hpp"
#include "skewrd/simulator.hpp"

namespace skewrd {

// Labels in storage order: J_I A_I H_I J_S A_S H_S.
const char* density_label(int index);

// Columns t,species,x,y,value; the interface column appears once per habitat.
void write_snapshots_csv(const std::vector<FieldState>& snapshots, std::ostream& out);

// "SKPD", u32 version, u32 nx_I, nx_S, ny, species count, then per snapshot an f64 time
// followed by each density row-major (x outer), all little-endian.
void write_snapshots_binary(const std::vector<FieldState>& snapshots, std::ostream& out);

std::vector<FieldState> read_snapshots_binary(std::istream& in, double ell, double L);

// Reads the latest time present in a snapshot CSV onto the given grid; every node
// must be present.
FieldState read_snapshot_csv(std::istream& in, double ell, double L, Eigen::Index nx_I,
                             Eigen::Index nx_S, Eigen::Index ny);
FieldState read_snapshot_csv_file(const std::string& path, double ell, double L,
                                  Eigen::Index nx_I, Eigen::Index nx_S, Eigen::Index ny);

// Columns species,x,y,re,im for labelled complex fields (habitat suffix appended).
void write_complex_fields_csv(const std::vector<std::pair<std::string, ComplexField>>& fields,
                              std::ostream& out);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace skewrd
