#pragma once

#include <string>
#include <string_view>

#include "lshlab/hash_family.hpp"

namespace lshlab {

// Family descriptor text format, one `key value` pair per line:
//
//   lshlab-family 1
//   kind bit-sampling|minhash|trivial|constant|explicit
//   d <dimension>
//   r <radius>                 (trivial only)
//   k <power>
//   seed <u64>
//   fn <weight> <function>     (explicit only, repeated)
//
// where <function> is one of
//   projection <i> | subset <i,j,..> | parity <i,j,..> | constant
//   | table <l0,l1,..> | minhash <rank0,rank1,..> | pair <bits> <bits>
//
// Blank lines and lines starting with '#' are ignored. format_descriptor
// writes keys in the order above, so parse/format round-trips exactly.

std::string format_descriptor(const FamilyDescriptor& descriptor);
FamilyDescriptor parse_descriptor(std::string_view text);

std::string format_function(const HashFunction& fn);
HashFunction parse_function(std::size_t dim, std::string_view text);

}  // namespace lshlab
