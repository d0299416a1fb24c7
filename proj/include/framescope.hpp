#pragma once

#include "framescope/config.hpp"
#include "framescope/corpus.hpp"
#include "framescope/diachrony.hpp"
#include "framescope/error.hpp"
#include "framescope/export_io.hpp"
#include "framescope/layout.hpp"
#include "framescope/netbuild.hpp"
#include "framescope/pipeline.hpp"
#include "framescope/report.hpp"
#include "framescope/textprep.hpp"
#include "framescope/vectorspace.hpp"
