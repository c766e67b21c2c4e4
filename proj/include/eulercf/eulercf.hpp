#ifndef EULERCF_EULERCF_HPP
#define EULERCF_EULERCF_HPP

#include "eulercf/numeric.hpp"
#include "eulercf/cf.hpp"
#include "eulercf/families.hpp"
#include "eulercf/oracle.hpp"
#include "eulercf/verify.hpp"

#endif  // EULERCF_EULERCF_HPP
