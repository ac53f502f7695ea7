#pragma once

#include "linconfig/error.hpp"
#include "linconfig/int_matrix.hpp"
#include "linconfig/normal_form.hpp"
#include "linconfig/finite_abelian.hpp"
#include "linconfig/representation.hpp"
#include "linconfig/cayley.hpp"
#include "linconfig/json_io.hpp"
