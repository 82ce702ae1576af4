#include <pybind11/pybind11.h>
PYBIND11_MODULE(_stabspread, m) { m.doc() = "pending"; }
