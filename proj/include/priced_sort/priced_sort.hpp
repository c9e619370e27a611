#ifndef PRICED_SORT_PRICED_SORT_HPP
#define PRICED_SORT_PRICED_SORT_HPP

#include "priced_sort/certificate.hpp"
#include "priced_sort/instance.hpp"
#include "priced_sort/instance_gen.hpp"
#include "priced_sort/instance_io.hpp"
#include "priced_sort/inversion_sort.hpp"
#include "priced_sort/oracle.hpp"
#include "priced_sort/rational.hpp"
#include "priced_sort/variants.hpp"

#endif
