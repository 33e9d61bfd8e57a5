#include "aztec2p.h"
extern "C" int az_placeholder(void) { return 0; }
