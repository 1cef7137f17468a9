#pragma once

#include "semsense/cli.hpp"
#include "semsense/codec.hpp"
#include "semsense/config.hpp"
#include "semsense/errors.hpp"
#include "semsense/es3n.hpp"
#include "semsense/netsim.hpp"
#include "semsense/number_format.hpp"
#include "semsense/observation.hpp"
#include "semsense/payload.hpp"
#include "semsense/report.hpp"
#include "semsense/ssw.hpp"
#include "semsense/triples.hpp"
#include "semsense/xml.hpp"
