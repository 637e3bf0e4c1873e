#pragma once

#include <string>

#include "hsurf/delaunay.hpp"
#include "hsurf/portrait.hpp"

namespace hsurf::io {

// 720x400 canvas, 50px margins, coordinates printed with two decimals.
inline constexpr int kSvgWidth = 720;
inline constexpr int kSvgHeight = 400;
inline constexpr int kSvgMargin = 50;

std::string xml_escape(const std::string& s);

// Window [0, x_max] x [-1, 1]; curves leaving it are cut.
std::string portrait_svg(const Portrait& p, const std::string& title);

// Meridian in the projected model, mirrored about the axis: (+-rho, z).
std::string profile_svg(const SurfaceProfile& profile, Kappa k, Model model, const std::string& title);

}  // namespace hsurf::io
