#include "gaffine/matrix_exp.hpp"

#include <Eigen/LU>

#include <array>
#include <cmath>

namespace gaffine {

namespace {

// c_k = (12 - k)! 6! / (12! k! (6 - k)!)
constexpr std::array<double, 7> kPade6 = {
    1.0, 1.0 / 2.0, 5.0 / 44.0, 1.0 / 66.0, 1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0,
};

constexpr double kTheta = 0.5;

} // namespace

Eigen::Matrix3d expm_taylor(const Eigen::Matrix3d& x, int terms)
{
    Eigen::Matrix3d sum = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
    for (int k = 1; k <= terms; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

Eigen::Matrix3d expm(const Eigen::Matrix3d& x)
{
    const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm < 1e-4)
        return expm_taylor(x, 8);

    int squarings = 0;
    if (norm > kTheta)
        squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta)));
    const Eigen::Matrix3d a = x / std::ldexp(1.0, squarings);

    Eigen::Matrix3d even = kPade6[0] * Eigen::Matrix3d::Identity();
    Eigen::Matrix3d odd = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d power = Eigen::Matrix3d::Identity();
    for (std::size_t k = 1; k < kPade6.size(); ++k) {
        power = power * a;
        if (k % 2 == 0)
            even += kPade6[k] * power;
        else
            odd += kPade6[k] * power;
    }
    const Eigen::Matrix3d num = even + odd;
    const Eigen::Matrix3d den = even - odd;
    Eigen::Matrix3d r = den.partialPivLu().solve(num);
    for (int i = 0; i < squarings; ++i)
        r = r * r;
    return r;
}

} // namespace gaffine
