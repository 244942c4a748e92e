#pragma once

namespace slbm {

enum class Method { EEBM, ILFBM, IREBM };

} // namespace slbm
