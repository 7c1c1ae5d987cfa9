#include "agmon/rng.hpp"

// header-only; this translation unit keeps the module list explicit
