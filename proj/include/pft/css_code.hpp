#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pft {

// Self-dual CSS code on n <= 32 qubits: the same parity-check rows serve the
// X and Z sectors, the stabilizer group is the even-weight subcode, and the
// logical class of any codeword is its weight parity.
struct css_code {
  std::string name;
  int n = 0;
  int distance = 0;
  int w_max = 0;  // greatest residual weight the decoder searches
  std::vector<uint32_t> checks;            // parity-check rows (bit i = qubit i)
  uint32_t logical_support = 0;            // minimum-weight logical rep
  std::vector<int> seeds;                  // encoding pivots (prepared in |+>)
  std::vector<std::pair<int, int>> encode_cnots;  // (control = seed, target)
  std::vector<uint32_t> syndrome_table;    // min-weight error per syndrome

  int num_checks() const { return int(checks.size()); }
  uint32_t syndrome(uint32_t word) const;
  bool in_code(uint32_t word) const { return syndrome(word) == 0; }
  // Weight parity = logical class; valid for words already in the code.
  int codeword_class(uint32_t word) const;
};

const css_code& steane_code();
const css_code& golay_code();
const css_code& code_by_name(const std::string& name);

struct sector_decode {
  bool heralded = false;   // no solution or logically ambiguous
  uint32_t correction = 0; // support of a minimal consistent correction
  int correction_class = 0;
};

// Minimum-residual-weight decoding of one Pauli sector: finds corrections
// consistent with the syndrome that are free on the erased positions and of
// minimal weight outside them; heralds when distinct consistent corrections
// disagree on the logical class.
sector_decode decode_sector(const css_code& code, uint32_t syndrome,
                            uint32_t erasure);

struct class_decode {
  bool heralded = false;
  int cls = 0;  // logical class of word xor correction
};

// Decodes a full measured word: syndrome-decodes it, then reports the
// logical class of the corrected word.
class_decode decode_word_class(const css_code& code, uint32_t word,
                               uint32_t erasure);

}  // namespace pft
