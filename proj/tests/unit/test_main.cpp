// Distributed under the MIT License.
// See LICENSE.txt for details.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
