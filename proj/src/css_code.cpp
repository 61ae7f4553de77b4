#include "pft/css_code.hpp"

#include <bit>
#include <stdexcept>

namespace pft {
namespace {

int wt(uint32_t v) { return std::popcount(v); }

// Reduced row echelon form over GF(2); returns pivot columns.
std::vector<int> rref(std::vector<uint32_t>& rows, int ncols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !((rows[p] >> c) & 1)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && ((rows[i] >> c) & 1)) rows[i] ^= rows[r];
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

void set_encoding(css_code& code, std::vector<uint32_t> basis) {
  std::vector<int> pivots = rref(basis, code.n);
  code.seeds = pivots;
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (int b = 0; b < code.n; ++b)
      if (b != pivots[r] && ((basis[r] >> b) & 1))
        code.encode_cnots.emplace_back(pivots[r], b);
}

void build_syndrome_table(css_code& code) {
  code.syndrome_table.assign(std::size_t(1) << code.num_checks(), 0);
  std::vector<bool> seen(code.syndrome_table.size(), false);
  seen[0] = true;
  // Enumerate residual errors by increasing weight.
  std::vector<uint32_t> frontier = {0};
  for (int w = 1; w <= code.w_max; ++w) {
    std::vector<uint32_t> next;
    for (uint32_t base : frontier) {
      const int start =
          base ? (31 - std::countl_zero(base)) + 1 : 0;
      for (int q = start; q < code.n; ++q) {
        const uint32_t e = base | (uint32_t(1) << q);
        const uint32_t s = code.syndrome(e);
        if (!seen[s]) {
          seen[s] = true;
          code.syndrome_table[s] = e;
        }
        next.push_back(e);
      }
    }
    frontier = std::move(next);
  }
  for (std::size_t s = 0; s < seen.size(); ++s)
    if (!seen[s])
      throw std::logic_error("imperfect syndrome table for " + code.name);
}

css_code make_steane() {
  css_code c;
  c.name = "steane";
  c.n = 7;
  c.distance = 3;
  c.w_max = 1;
  c.checks = {0x78, 0x66, 0x55};  // {3,4,5,6}, {1,2,5,6}, {0,2,4,6}
  c.logical_support = 0x7;        // {0,1,2}
  set_encoding(c, c.checks);
  build_syndrome_table(c);
  return c;
}

css_code make_golay() {
  css_code c;
  c.name = "golay";
  c.n = 23;
  c.distance = 7;
  c.w_max = 3;
  const uint32_t g = 0b101011100011;  // x^11+x^9+x^7+x^6+x^5+x+1
  std::vector<uint32_t> gen;
  for (int k = 0; k <= 11; ++k) gen.push_back(g << k);
  // Stabilizer = even-weight subcode: difference set against one odd row.
  std::vector<uint32_t> even;
  for (int k = 1; k <= 11; ++k) even.push_back(gen[k] ^ gen[0]);
  std::vector<uint32_t> checks = even;
  rref(checks, c.n);
  c.checks = checks;
  // Minimum-weight odd codeword over the full span.
  uint32_t best = 0;
  int best_w = 24;
  for (uint32_t m = 1; m < (1u << 12); ++m) {
    uint32_t word = 0;
    for (int k = 0; k <= 11; ++k)
      if ((m >> k) & 1) word ^= gen[k];
    const int w = wt(word);
    if ((w & 1) && w < best_w) {
      best_w = w;
      best = word;
    }
  }
  c.logical_support = best;
  set_encoding(c, even);
  build_syndrome_table(c);
  return c;
}

// Erased-column linear system prepared once per decode call.
struct erasure_system {
  std::vector<int> cols;              // qubit index per erased column
  std::vector<uint32_t> pivot_a;      // reduced rows: column mask
  std::vector<uint32_t> pivot_combo;  // original-check combination mask
  std::vector<int> pivot_col;
  std::vector<uint32_t> null_combo;   // left-null-space basis
  bool kernel_odd = false;            // kernel contains odd-weight vector

  explicit erasure_system(const css_code& code, uint32_t erasure) {
    for (int q = 0; q < code.n; ++q)
      if ((erasure >> q) & 1) cols.push_back(q);
    const int rcount = code.num_checks();
    std::vector<uint32_t> a(rcount), combo(rcount);
    for (int r = 0; r < rcount; ++r) {
      combo[r] = uint32_t(1) << r;
      uint32_t m = 0;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if ((code.checks[r] >> cols[j]) & 1) m |= uint32_t(1) << j;
      a[r] = m;
    }
    std::size_t rr = 0;
    for (std::size_t cidx = 0; cidx < cols.size() && rr < a.size(); ++cidx) {
      std::size_t p = rr;
      while (p < a.size() && !((a[p] >> cidx) & 1)) ++p;
      if (p == a.size()) continue;
      std::swap(a[rr], a[p]);
      std::swap(combo[rr], combo[p]);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (i != rr && ((a[i] >> cidx) & 1)) {
          a[i] ^= a[rr];
          combo[i] ^= combo[rr];
        }
      pivot_col.push_back(int(cidx));
      ++rr;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i < rr) {
        pivot_a.push_back(a[i]);
        pivot_combo.push_back(combo[i]);
      } else {
        null_combo.push_back(combo[i]);
      }
    }
    // Kernel basis: one vector per free column; odd-weight kernel existence
    // is linear in the basis.
    std::vector<bool> is_pivot(cols.size(), false);
    for (int pc : pivot_col) is_pivot[pc] = true;
    for (std::size_t f = 0; f < cols.size(); ++f) {
      if (is_pivot[f]) continue;
      int weight = 1;  // the free column itself
      for (std::size_t r = 0; r < pivot_a.size(); ++r)
        if ((pivot_a[r] >> f) & 1) ++weight;
      if (weight & 1) kernel_odd = true;
    }
  }

  bool solvable(uint32_t rhs) const {
    for (uint32_t nu : null_combo)
      if (wt(nu & rhs) & 1) return false;
    return true;
  }
  // Particular solution with free columns zero; call only when solvable.
  uint32_t solve(uint32_t rhs, int* weight_out) const {
    uint32_t sol = 0;
    int w = 0;
    for (std::size_t r = 0; r < pivot_a.size(); ++r)
      if (wt(pivot_combo[r] & rhs) & 1) {
        sol |= uint32_t(1) << cols[pivot_col[r]];
        ++w;
      }
    if (weight_out) *weight_out = w;
    return sol;
  }
};

uint32_t apply_checks(const css_code& code, uint32_t word) {
  uint32_t s = 0;
  for (int r = 0; r < code.num_checks(); ++r)
    if (wt(code.checks[r] & word) & 1) s |= uint32_t(1) << r;
  return s;
}

sector_decode decode_with_erasure(const css_code& code, uint32_t syndrome,
                                  uint32_t erasure) {
  const erasure_system sys(code, erasure);
  const uint32_t unerased = ((uint32_t(1) << code.n) - 1) & ~erasure;
  std::vector<int> free_qubits;
  for (int q = 0; q < code.n; ++q)
    if ((unerased >> q) & 1) free_qubits.push_back(q);

  for (int w = 0; w <= code.w_max; ++w) {
    if (int(free_qubits.size()) < w) break;
    bool any = false;
    bool class_seen[2] = {false, false};
    uint32_t best_corr = 0;
    int best_cls = 0;
    // All unerased patterns of weight w.
    std::vector<int> idx(w);
    for (int i = 0; i < w; ++i) idx[i] = i;
    while (true) {
      uint32_t u = 0;
      for (int i = 0; i < w; ++i) u |= uint32_t(1) << free_qubits[idx[i]];
      const uint32_t rhs = syndrome ^ apply_checks(code, u);
      if (sys.solvable(rhs)) {
        int xw = 0;
        const uint32_t xe = sys.solve(rhs, &xw);
        const int cls = (w + xw) & 1;
        if (!any) {
          best_corr = u | xe;
          best_cls = cls;
        }
        any = true;
        class_seen[cls] = true;
        if (sys.kernel_odd) class_seen[cls ^ 1] = true;
      }
      if (w == 0) break;
      int i = w - 1;
      while (i >= 0 && idx[i] == int(free_qubits.size()) - (w - i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (any) {
      if (class_seen[0] && class_seen[1]) return {true, 0, 0};
      return {false, best_corr, best_cls};
    }
  }
  return {true, 0, 0};
}

}  // namespace

uint32_t css_code::syndrome(uint32_t word) const {
  return apply_checks(*this, word);
}

int css_code::codeword_class(uint32_t word) const { return wt(word) & 1; }

const css_code& steane_code() {
  static const css_code c = make_steane();
  return c;
}

const css_code& golay_code() {
  static const css_code c = make_golay();
  return c;
}

const css_code& code_by_name(const std::string& name) {
  if (name == "steane") return steane_code();
  if (name == "golay") return golay_code();
  throw std::invalid_argument("unknown code: " + name);
}

sector_decode decode_sector(const css_code& code, uint32_t syndrome,
                            uint32_t erasure) {
  if (erasure == 0) {
    const uint32_t corr = code.syndrome_table[syndrome];
    return {false, corr, code.codeword_class(corr)};
  }
  return decode_with_erasure(code, syndrome, erasure);
}

class_decode decode_word_class(const css_code& code, uint32_t word,
                               uint32_t erasure) {
  const sector_decode d = decode_sector(code, code.syndrome(word), erasure);
  if (d.heralded) return {true, 0};
  return {false, (wt(word) + wt(d.correction)) & 1};
}

}  // namespace pft
