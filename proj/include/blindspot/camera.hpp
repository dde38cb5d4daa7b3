#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace blindspot {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
};

struct ImagePoint {
    double u = 0.0;  // normalized [0,1] when inside the frame
    double v = 0.0;
};

// Pinhole camera in a z-up right-handed world. Camera frame: +z forward,
// +x right, +y down in the image.
class PinholeCamera {
public:
    PinholeCamera(Vec3 position, Vec3 forward, double hfov_deg, int width, int height)
        : position_(position), width_(width), height_(height) {
        const Vec3 up{0.0, 0.0, 1.0};
        Vec3 f = forward.normalized();
        Vec3 right = f.cross(up);
        if (right.norm() < 1e-9) right = Vec3{0.0, 1.0, 0.0};  // looking straight up/down
        right = right.normalized();
        axis_x_ = right;
        axis_y_ = f.cross(right);  // image v grows downward
        axis_z_ = f;
        fx_ = (width / 2.0) / std::tan(hfov_deg * M_PI / 180.0 / 2.0);
        fy_ = fx_;  // square pixels
    }

    int width() const { return width_; }
    int height() const { return height_; }

    // Returns nullopt when the point is on or behind the camera plane.
    std::optional<ImagePoint> project(const Vec3& world) const {
        const Vec3 rel = world - position_;
        const double zc = rel.dot(axis_z_);
        if (zc < 1e-6) return std::nullopt;
        const double xc = rel.dot(axis_x_);
        const double yc = rel.dot(axis_y_);
        const double u_px = width_ / 2.0 + fx_ * xc / zc;
        const double v_px = height_ / 2.0 + fy_ * yc / zc;
        return ImagePoint{u_px / width_, v_px / height_};
    }

private:
    Vec3 position_;
    Vec3 axis_x_, axis_y_, axis_z_;
    double fx_, fy_;
    int width_, height_;
};

// Forward vector from yaw (around z, 0 = +x) and downward pitch, degrees.
inline Vec3 forward_from_angles(double yaw_deg, double pitch_down_deg) {
    const double yaw = yaw_deg * M_PI / 180.0;
    const double pitch = pitch_down_deg * M_PI / 180.0;
    return {std::cos(yaw) * std::cos(pitch), std::sin(yaw) * std::cos(pitch), -std::sin(pitch)};
}

}  // namespace blindspot
