#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracperim/geometry.hpp"

namespace fracperim {

// Closed snowflake polygon at the given iterate: equilateral triangle of unit
// side, barycenter at the origin, top vertex on the y-axis; each iterate
// replaces the middle third of every edge by an outward-pointing bump.
// Vertex count 3 * 4^level.
PolygonRegion koch_snowflake(int level);

// Open snowflake-edge polyline from (0,0) to (1,0) with 4^level segments,
// bumps upward. Used by the box-counting estimators.
std::vector<Vec2> koch_curve(int level);

struct KochPiece {
    PolygonRegion tri;  // outward triangle added at this level
    Disk ball;          // small ball outside the snowflake touching the apex
    SimilarityMap map;  // similarity sending the base triangle to tri
};

// The 3 * 4^(level-1) triangles added at iterate `level` (level >= 1), each
// with its witness ball and the similarity that produces it from the base
// triangle. Triangle vertices are built directly from the previous iterate's
// edges, independently of the returned maps.
std::vector<KochPiece> koch_pieces(int level);

// Balls of radius 1/(4 lambda^k) at (k, 0, ..., 0, i) for k = 1..K,
// i = 1..b^(k-1), with lambda = b^(1/(n-sigma)). Pairwise gaps >= 1/2.
BallSet exploded_fractal(int b, double sigma, int n, int K);

// A self-similar family T = union of pieces F_k^i(T0'), with an optional
// witness set S0 whose images stay outside T. Pieces at level k: a * b^(k-1)
// copies of the block scaled by lambda^(-k).
class RecursiveFamily {
  public:
    enum class Kind { Koch, Dendrite, Sponge, Exploded };

    static RecursiveFamily koch(int max_level = 8);
    static RecursiveFamily sierpinski_dendrite(int max_level = 8);
    static RecursiveFamily sponge(int max_level = 8);
    static RecursiveFamily exploded(int b, double sigma, int max_level = 8); // planar

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int a() const { return a_; }
    int b() const { return b_; }
    double lambda() const { return lambda_; }
    int dim() const { return 2; }
    int max_level() const { return max_level_; }

    // log b / log lambda must land in (n-1, n) for the divergence-threshold
    // argument to apply
    bool dimension_valid() const;
    double threshold_s() const; // n - log b / log lambda

    long piece_count(int level) const;
    const std::vector<SimilarityMap>& maps(int level) const;

    SlicePtr block() const;    // T0'
    SlicePtr witness0() const; // S0, null when absent
    SlicePtr piece(int level, long i) const;
    SlicePtr witness(int level, long i) const;

    // polygon part of a piece (Koch triangle, dendrite star, sponge outline);
    // throws for the exploded family
    PolygonRegion piece_polygon(int level, long i) const;
    std::optional<Disk> piece_hole(int level, long i) const; // sponge only
    std::optional<Disk> piece_disk(int level, long i) const; // exploded only

    double block_area() const;

  private:
    RecursiveFamily() = default;

    Kind kind_ = Kind::Koch;
    std::string name_;
    int a_ = 1, b_ = 2;
    double lambda_ = 2.0;
    int max_level_ = 8;

    std::optional<PolygonRegion> block_poly_;
    std::optional<Disk> block_hole_;
    std::optional<Disk> block_disk_;
    std::optional<PolygonRegion> witness_poly_;
    std::optional<Disk> witness_disk_;

    mutable std::vector<std::vector<SimilarityMap>> level_maps_;
    void ensure_maps(int level) const;
};

// Verifies that distinct generated pieces (and witnesses against pieces)
// overlap only on null sets: spot-checks pairwise intersection areas up to
// `level`, throwing when an overlap beyond tolerance is found.
void check_non_overlap(const RecursiveFamily& fam, int level, double rel_tol = 1e-9);

} // namespace fracperim
