#include "qrelax/matrix_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "qrelax/constants.hpp"

namespace qrelax {
namespace {

constexpr char kMagic[5] = {'Q', 'R', 'X', 'M', '1'};

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
    std::vector<char> buf;
    std::size_t pos = 0;

    explicit Reader(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IngestError("cannot open matrix file: " + path);
        buf.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    void need(std::size_t n, const char* what) {
        if (pos + n > buf.size())
            throw IngestError(std::string("matrix file truncated while reading ") + what);
    }
    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    double f64(const char* what) {
        const std::uint64_t bits = u64(what);
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
};

} // namespace

void write_matrix(const HermitianOperator& op, const std::string& path, MatrixKind kind,
                  bool symmetric) {
    const std::size_t n = op.dim();
    std::string out;
    out.append(kMagic, 5);
    out.push_back(static_cast<char>(kind));
    out.push_back(symmetric ? 1 : 0);
    out.push_back(0);
    put_u64(out, n);

    if (kind == MatrixKind::Dense) {
        out.reserve(out.size() + 8 * n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) put_f64(out, op.mat(i, j));
    } else {
        std::uint64_t nnz = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = symmetric ? i : 0; j < n; ++j)
                if (op.mat(i, j) != 0.0) ++nnz;
        put_u64(out, nnz);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
                if (op.mat(i, j) == 0.0) continue;
                put_u32(out, static_cast<std::uint32_t>(i));
                put_u32(out, static_cast<std::uint32_t>(j));
                put_f64(out, op.mat(i, j));
            }
    }

    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + tmp);
        f.write(out.data(), static_cast<std::streamsize>(out.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

HermitianOperator ingest_matrix(const std::string& path, std::size_t dim_cap) {
    Reader r(path);
    r.need(16, "header");
    if (std::memcmp(r.buf.data(), kMagic, 5) != 0)
        throw IngestError("bad magic: not a QRXM1 matrix file: " + path);
    const auto kind = static_cast<unsigned char>(r.buf[5]);
    const auto symmetric = static_cast<unsigned char>(r.buf[6]);
    if (kind > 1) throw IngestError("unknown matrix kind in " + path);
    if (symmetric > 1) throw IngestError("bad symmetry flag in " + path);
    r.pos = 8;
    const std::uint64_t dim = r.u64("dimension");
    if (dim == 0) throw IngestError("zero dimension in " + path);
    if (dim > dim_cap)
        throw IngestError("dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(dim_cap));
    const std::size_t n = static_cast<std::size_t>(dim);

    HermitianOperator op;
    op.mat = Matrix(n, n);

    if (kind == 0) {
        r.need(8 * n * n, "dense payload");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) op.mat(i, j) = r.f64("dense entry");
    } else {
        const std::uint64_t nnz = r.u64("entry count");
        for (std::uint64_t e = 0; e < nnz; ++e) {
            const std::uint32_t i = r.u32("entry row");
            const std::uint32_t j = r.u32("entry col");
            if (i >= n || j >= n) throw IngestError("coordinate out of range in " + path);
            if (symmetric && i > j)
                throw IngestError("symmetric coordinate file has lower-triangle entry");
            const double v = r.f64("entry value");
            op.mat(i, j) = v;
            if (symmetric) op.mat(j, i) = v;
        }
    }

    for (std::size_t idx = 0, total = n * n; idx < total; ++idx)
        if (!std::isfinite(op.mat.data()[idx]))
            throw IngestError("non-finite entry in " + path);

    const double asym = relative_asymmetry(op.mat);
    if (asym > 0.0) {
        if (asym > tol::kSymmetryIngest)
            std::cerr << "qrelax: warning: symmetrizing " << path
                      << " (relative asymmetry " << asym << ")\n";
        symmetrize(op.mat);
    }
    return op;
}

} // namespace qrelax
