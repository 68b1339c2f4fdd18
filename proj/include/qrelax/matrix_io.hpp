#pragma once
#include <stdexcept>
#include <string>

#include "qrelax/linalg.hpp"

// Binary matrix container, magic "QRXM1", little-endian throughout.
//
//   offset  size  field
//   0       5     magic "QRXM1"
//   5       1     kind: 0 = dense, 1 = coordinate
//   6       1     symmetric flag: 0/1
//   7       1     reserved (0)
//   8       8     dimension N (uint64)
//   coordinate only:
//   16      8     entry count (uint64)
//
// Dense payload: N*N float64, row major. Coordinate payload: entries of
// (uint32 i, uint32 j, float64 value); when the symmetric flag is set only
// i <= j entries are stored and the lower triangle is mirrored on read.

namespace qrelax {

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MatrixKind : unsigned char { Dense = 0, Coordinate = 1 };

void write_matrix(const HermitianOperator& op, const std::string& path,
                  MatrixKind kind = MatrixKind::Dense, bool symmetric = true);

// Reads a matrix file and returns the operator. Asymmetric dense payloads
// are symmetrized with a warning to stderr when the relative asymmetry
// exceeds 1e-10; non-finite entries, malformed headers and oversized
// dimensions raise IngestError.
HermitianOperator ingest_matrix(const std::string& path, std::size_t dim_cap = 100000);

} // namespace qrelax
