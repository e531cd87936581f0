#include "aopc/lp_export.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aopc/instance_io.hpp"

namespace aopc {
namespace {

void check_options(const Instance& inst, const LpExportOptions& opts) {
  if (opts.window_lo.has_value() != opts.window_hi.has_value()) {
    throw std::invalid_argument("window bounds must be given together");
  }
  if (opts.window_lo) {
    const double lo = *opts.window_lo;
    const double hi = *opts.window_hi;
    if (!(lo > 0.0 && lo <= hi && hi <= 1.0)) {
      throw std::invalid_argument("window must satisfy 0 < lo <= hi <= 1");
    }
  }
  if (opts.kappa && (*opts.kappa < 0 || *opts.kappa > inst.n)) {
    throw std::invalid_argument("kappa out of range");
  }
}

// Emits "su1 + su2 + ..." style sums with a line break every few terms so no
// line grows past what common LP readers accept.
class RowWriter {
 public:
  RowWriter(std::ostream& os, int per_line) : os_(os), per_line_(per_line) {}

  void term(double coef, const std::string& var) {
    if (count_ > 0 && count_ % per_line_ == 0) os_ << "\n   ";
    os_ << (coef < 0 ? " - " : " + ") << format_double(std::abs(coef)) << ' '
        << var;
    ++count_;
  }

 private:
  std::ostream& os_;
  int per_line_;
  int count_ = 0;
};

}  // namespace

void write_lp(const Instance& inst, std::ostream& os, const LpExportOptions& opts) {
  validate(inst);
  check_options(inst, opts);
  const int n = inst.n;

  os << "\\ Assortment optimization with product costs\n";
  os << "Maximize\n obj:";
  {
    RowWriter row(os, 4);
    for (int j = 0; j < n; ++j) {
      row.term(inst.revenue[j], "u" + std::to_string(j + 1));
      row.term(-inst.cost[j], "x" + std::to_string(j + 1));
    }
  }
  os << "\nSubject To\n";
  for (int j = 0; j < n; ++j) {
    os << " ratio" << (j + 1) << ":";
    RowWriter row(os, 8);
    row.term(inst.v0, "u" + std::to_string(j + 1));
    row.term(-inst.preference[j], "u0");
    os << " <= 0\n";
  }
  for (int j = 0; j < n; ++j) {
    os << " force" << (j + 1) << ":";
    RowWriter row(os, 8);
    row.term(1.0, "u" + std::to_string(j + 1));
    row.term(-(inst.preference[j] / (inst.v0 + inst.preference[j])),
             "x" + std::to_string(j + 1));
    os << " <= 0\n";
  }
  {
    os << " conv:";
    RowWriter row(os, 8);
    row.term(1.0, "u0");
    for (int j = 0; j < n; ++j) row.term(1.0, "u" + std::to_string(j + 1));
    os << " = 1\n";
  }
  if (opts.kappa) {
    os << " card:";
    RowWriter row(os, 8);
    for (int j = 0; j < n; ++j) row.term(1.0, "x" + std::to_string(j + 1));
    os << " <= " << *opts.kappa << "\n";
  }
  if (opts.window_lo) {
    os << "Bounds\n " << format_double(*opts.window_lo) << " <= u0 <= "
       << format_double(*opts.window_hi) << "\n";
  }
  os << "Binaries\n";
  for (int j = 0; j < n; ++j) {
    os << ' ' << 'x' << (j + 1);
    if ((j + 1) % 16 == 0) os << '\n';
  }
  if (n % 16 != 0) os << '\n';
  os << "End\n";
}

std::string write_lp_string(const Instance& inst, const LpExportOptions& opts) {
  std::ostringstream os;
  write_lp(inst, os, opts);
  return os.str();
}

void write_lp_file(const Instance& inst, const std::string& path,
                   const LpExportOptions& opts) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_lp(inst, f, opts);
}

}  // namespace aopc
