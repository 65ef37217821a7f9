#pragma once

#include <stdexcept>
#include <string>

namespace geolex {

// Domain errors map to exit code 3 in the CLI, io errors to 4.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class ScopeMismatch : public DataError {
public:
    explicit ScopeMismatch(const std::string& msg) : DataError("scope mismatch: " + msg) {}
};

class BothEmpty : public DataError {
public:
    BothEmpty() : DataError("jaccard of two empty token sets") {}
};

class MatrixEntryError : public DataError {
public:
    MatrixEntryError(const std::string& a, const std::string& b)
        : DataError("similarity undefined for pair (" + a + ", " + b + "): both vocabularies empty") {}
};

class EmptyLandmarkSet : public DataError {
public:
    EmptyLandmarkSet() : DataError("landmark set is empty") {}
};

class NoGeotaggedData : public DataError {
public:
    NoGeotaggedData() : DataError("store contains no geotagged records") {}
};

class InsufficientBaselineData : public DataError {
public:
    explicit InsufficientBaselineData(int weekday)
        : DataError("baseline window has no sample for weekday " + std::to_string(weekday)),
          weekday_(weekday) {}
    int weekday() const { return weekday_; }

private:
    int weekday_;
};

class TooFewPoints : public DataError {
public:
    explicit TooFewPoints(std::size_t n)
        : DataError("cluster baseline needs at least 8 observations, got " + std::to_string(n)) {}
};

class SingleCluster : public DataError {
public:
    SingleCluster() : DataError("silhouette needs at least 2 non-empty clusters") {}
};

class ZeroBaseline : public DataError {
public:
    ZeroBaseline() : DataError("baseline value is zero; percent change undefined") {}
};

class ConstantSeries : public DataError {
public:
    ConstantSeries() : DataError("pearson undefined for a constant series") {}
};

class LengthMismatch : public DataError {
public:
    explicit LengthMismatch(std::size_t n)
        : DataError("series overlap too short for pearson: " + std::to_string(n) + " < 2") {}
};

} // namespace geolex
