#include "ccnv/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ccnv {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'C', 'C', 'N', 'V'};

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}

void put_name(std::ostream& os, const std::string& name) {
  put_u32(os, static_cast<std::uint32_t>(name.size()));
  os.write(name.data(), static_cast<std::streamsize>(name.size()));
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

std::string get_name(std::istream& is) {
  const std::uint32_t len = get_u32(is);
  if (len > 4096) throw std::runtime_error("checkpoint: implausible name length");
  std::string s(len, '\0');
  is.read(s.data(), len);
  return s;
}

}  // namespace

double CheckpointData::scalar(const std::string& name) const {
  for (const auto& s : scalars)
    if (s.name == name) return s.value;
  throw std::runtime_error("checkpoint: missing scalar '" + name + "'");
}

const RealField& CheckpointData::field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.first == name) return f.second;
  throw std::runtime_error("checkpoint: missing field '" + name + "'");
}

void write_checkpoint(const std::string& path,
                      const std::vector<std::pair<std::string, const RealField*>>& fields,
                      const std::vector<NamedScalar>& scalars) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("checkpoint: cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  put_u32(os, kCheckpointVersion);
  const int n = fields.empty() ? 0 : fields.front().second->grid.n;
  put_u32(os, static_cast<std::uint32_t>(n));
  put_u32(os, static_cast<std::uint32_t>(fields.size()));
  put_u32(os, static_cast<std::uint32_t>(scalars.size()));
  for (const auto& s : scalars) {
    put_name(os, s.name);
    put_f64(os, s.value);
  }
  for (const auto& [name, f] : fields) {
    if (f->grid.n != n) throw std::invalid_argument("checkpoint: mixed grid sizes");
    put_name(os, name);
    os.write(reinterpret_cast<const char*>(f->values.data()),
             static_cast<std::streamsize>(f->values.size() * sizeof(double)));
  }
  if (!os) throw std::runtime_error("checkpoint: write failed for '" + path + "'");
}

CheckpointData read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in '" + path + "'");
  const std::uint32_t version = get_u32(is);
  if (version != kCheckpointVersion) throw std::runtime_error("checkpoint: unsupported version");
  CheckpointData data;
  data.n = static_cast<int>(get_u32(is));
  const std::uint32_t nfields = get_u32(is);
  const std::uint32_t nscalars = get_u32(is);
  for (std::uint32_t i = 0; i < nscalars; ++i) {
    NamedScalar s;
    s.name = get_name(is);
    s.value = get_f64(is);
    data.scalars.push_back(std::move(s));
  }
  GridSpec g;
  g.n = data.n;
  for (std::uint32_t i = 0; i < nfields; ++i) {
    std::string name = get_name(is);
    RealField f(g);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    data.fields.emplace_back(std::move(name), std::move(f));
  }
  if (!is) throw std::runtime_error("checkpoint: truncated file '" + path + "'");
  return data;
}

}  // namespace ccnv
