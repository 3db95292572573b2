#include "engelfn/cylinder.hpp"

#include <sstream>
#include <stdexcept>

namespace engelfn {

Cylinder::Cylinder(std::vector<Digit> base) : base_(std::move(base)) {
    for (Digit c : base_)
        if (c < 0) throw std::invalid_argument("Cylinder: negative digit");
}

long long Cylinder::sigma(std::size_t k) const {
    if (k > base_.size()) throw std::out_of_range("Cylinder::sigma");
    long long s = 0;
    for (std::size_t i = 0; i < k; ++i) s += base_[i];
    return s;
}

Cylinder Cylinder::child(Digit c) const {
    if (c < 0) throw std::invalid_argument("Cylinder::child: negative digit");
    std::vector<Digit> b = base_;
    b.push_back(c);
    return Cylinder(std::move(b));
}

Cylinder Cylinder::lower_neighbor() const {
    if (base_.empty()) throw std::domain_error("Cylinder::lower_neighbor: root cylinder");
    std::vector<Digit> b = base_;
    ++b.back();
    return Cylinder(std::move(b));
}

Rat Cylinder::a() const {
    Rat sum(0);
    Int prod(1);
    long long s = 0;
    for (Digit c : base_) {
        s += c;
        prod *= int_of(2 + s);
        sum += make_rat(1, prod);
    }
    return sum;
}

Rat Cylinder::b() const { return a() + length(); }

Rat Cylinder::length() const {
    Int prod(1);
    long long s = 0;
    for (Digit c : base_) {
        s += c;
        prod *= int_of(2 + s);
    }
    prod *= int_of(1 + s);
    return make_rat(1, prod);
}

Rat Cylinder::child_ratio(Digit next) const {
    if (next < 0) throw std::invalid_argument("Cylinder::child_ratio: negative digit");
    const long long s = sigma();
    const long long s1 = s + next;
    return make_rat(int_of(1 + s), int_of(2 + s1) * int_of(1 + s1));
}

DigitStream Cylinder::infimum_point() const {
    return lower_neighbor().supremum_point();
}

DigitStream Cylinder::supremum_point() const {
    return DigitStream::e_rational(base_);
}

std::string Cylinder::str() const {
    if (base_.empty()) return "()";
    std::ostringstream os;
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (i) os << ' ';
        os << base_[i];
    }
    return os.str();
}

Rat prepend_length_ratio(const Cylinder& cyl, Digit i) {
    if (i < 0) throw std::invalid_argument("prepend_length_ratio: negative digit");
    std::vector<Digit> b;
    b.reserve(cyl.rank() + 1);
    b.push_back(i);
    b.insert(b.end(), cyl.base().begin(), cyl.base().end());
    return Cylinder(std::move(b)).length() / cyl.length();
}

}  // namespace engelfn
