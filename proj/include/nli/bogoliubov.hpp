#pragma once

// Independent verification engine, part one: explicit Bogoliubov maps.
//
// The full optical circuit (squeezer -> internal loss -> squeezer ->
// detection loss, with vacuum loss ancillas) is composed into a single linear
// map b_i = sum_k A[i][k] a_k + alpha[i][k] a_k^dagger acting on vacuum
// inputs.  Photon-number moments then follow from Wick/Gaussian pair
// contractions with no reference to the closed-form fringe expressions, which
// makes this module the oracle the analytics are tested against.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nli/core.hpp"

namespace nli::gauss {

/// Linear input->output map of annihilation/creation coefficients.
/// Row i gives output mode i; column k the coefficient of input mode k.
struct BogoliubovMap {
  Eigen::MatrixXcd A;      // coefficients of a_k
  Eigen::MatrixXcd alpha;  // coefficients of a_k^dagger
  std::vector<std::string> mode_labels;
  std::vector<int> output_ports;  // rows carrying the detected signal(s)

  int modes() const { return static_cast<int>(A.rows()); }
};

/// The identity map on n modes.
BogoliubovMap identity_map(int n);

/// Compose a single-mode squeezer (b = u a + v a^dag) onto `map` at `mode`.
void apply_squeezer(BogoliubovMap& map, int mode, const GainSetting& gain);

/// Compose a two-mode squeezer (b_1 = u a_1 + v a_2^dag, b_2 = u a_2 +
/// v a_1^dag) onto `map` at modes m1, m2.
void apply_two_mode_squeezer(BogoliubovMap& map, int m1, int m2,
                             const GainSetting& gain);

/// Compose a beam splitter (b_1 = t a_1 + r a_2, b_2 = -r a_1 + t* a_2 with
/// real r = sqrt(1-|t|^2)) onto `map` at modes m1, m2.
void apply_beam_splitter(BogoliubovMap& map, int m1, int m2, complex t);

/// Largest violation of the canonical commutation invariants
/// A A^H - alpha alpha^H = 1 and A alpha^T symmetric.
double commutation_defect(const BogoliubovMap& map);

/// Build the end-to-end map for a full interferometer configuration,
/// including loss and detection ancilla modes (identity elements when the
/// corresponding transmittance is 1).
BogoliubovMap compose_circuit(const NliConfig& cfg);

/// Moments of the detected photon numbers for a map over vacuum inputs.
struct WickMoments {
  std::vector<PhotonStatistics> ports;  // one entry per output port
  double covariance = 0.0;              // cross-port number covariance
  PhotonStatistics sum;                 // summed-count statistics (2 ports)
};

/// Wick / Gaussian-moment evaluation.  Throws integrity_error if the map
/// violates the commutation invariants beyond 1e-10.
WickMoments wick_moments(const BogoliubovMap& map);

}  // namespace nli::gauss
