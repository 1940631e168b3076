#include "simlda/errors.hpp"
