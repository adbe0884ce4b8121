#pragma once

#include "gencon/bounds.hpp"
#include "gencon/budget.hpp"
#include "gencon/certificate.hpp"
#include "gencon/connectivity.hpp"
#include "gencon/flow.hpp"
#include "gencon/graph.hpp"
#include "gencon/path_bundles.hpp"
#include "gencon/product_certificates.hpp"
#include "gencon/steiner.hpp"
