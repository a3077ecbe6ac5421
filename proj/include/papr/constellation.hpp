#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "papr/random.hpp"
#include "papr/types.hpp"

namespace papr {

enum class Constellation { qam16, qam4, bpsk };

struct ConstellationSpec {
  Constellation kind = Constellation::qam16;
  // Scale points so the mean squared modulus over the constellation is 1.
  bool normalized = true;
};

inline const char* to_string(Constellation kind) {
  switch (kind) {
    case Constellation::qam16: return "qam16";
    case Constellation::qam4: return "qam4";
    case Constellation::bpsk: return "bpsk";
  }
  return "unknown";
}

inline Constellation constellation_from_string(const std::string& name) {
  if (name == "qam16") return Constellation::qam16;
  if (name == "qam4") return Constellation::qam4;
  if (name == "bpsk") return Constellation::bpsk;
  throw std::invalid_argument("unknown constellation: " + name);
}

inline int bits_per_symbol(Constellation kind) {
  switch (kind) {
    case Constellation::qam16: return 4;
    case Constellation::qam4: return 2;
    case Constellation::bpsk: return 1;
  }
  return 0;
}

// Zero-mean point sets. 16-QAM is the {a+jb : a,b in {+-1,+-3}} lattice,
// scaled by 1/sqrt(10) when normalized so the average symbol energy is 1.
template <class Real>
std::vector<std::complex<Real>> constellation_points(const ConstellationSpec& spec) {
  std::vector<std::complex<Real>> points;
  switch (spec.kind) {
    case Constellation::qam16: {
      const Real lattice[4] = {Real(-3), Real(-1), Real(1), Real(3)};
      const Real scale = spec.normalized ? Real(1) / std::sqrt(Real(10)) : Real(1);
      points.reserve(16);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          points.emplace_back(lattice[a] * scale, lattice[b] * scale);
      break;
    }
    case Constellation::qam4: {
      const Real scale = spec.normalized ? Real(1) / std::sqrt(Real(2)) : Real(1);
      points = {{scale, scale}, {scale, -scale}, {-scale, scale}, {-scale, -scale}};
      break;
    }
    case Constellation::bpsk: {
      points = {{Real(1), Real(0)}, {Real(-1), Real(0)}};
      break;
    }
  }
  return points;
}

// Symbol for stream position `counter` of the given seed.
template <class Real>
std::complex<Real> draw_symbol(const std::vector<std::complex<Real>>& points,
                               std::uint64_t seed, std::uint64_t counter) {
  const int bits = points.size() == 16 ? 4 : (points.size() == 4 ? 2 : 1);
  const std::uint64_t index = random_word(seed, counter) >> (64 - bits);
  return points[static_cast<std::size_t>(index)];
}

}  // namespace papr
