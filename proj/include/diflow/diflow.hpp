#pragma once

#include <diflow/branchmerge.hpp>
#include <diflow/errors.hpp>
#include <diflow/flow.hpp>
#include <diflow/io.hpp>
#include <diflow/poset.hpp>
#include <diflow/presentation.hpp>
#include <diflow/thomotopy.hpp>
#include <diflow/zigzag.hpp>
