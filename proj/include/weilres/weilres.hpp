#pragma once

#include "weilres/core/abelian_group.hpp"
#include "weilres/core/cyclotomic.hpp"
#include "weilres/core/field_matrix.hpp"
#include "weilres/core/laurent.hpp"
#include "weilres/dualside.hpp"
#include "weilres/hecke.hpp"
#include "weilres/io/descriptor.hpp"
#include "weilres/io/json.hpp"
#include "weilres/iwahori.hpp"
#include "weilres/rootdata.hpp"
#include "weilres/testfn.hpp"
#include "weilres/verify.hpp"
