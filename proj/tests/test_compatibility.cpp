#include <doctest.h>

#include "qpac/compatibility.hpp"
#include "support.hpp"

using namespace qpac;

namespace {

ProjectivePovm hadamard_measurement() {
    ComplexMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    return labeled_basis_measurement(ComplexMatrix(h / std::sqrt(2.0)),
                                     std::vector<std::size_t>{0, 1},
                                     {"0", "1"});
}

std::vector<std::size_t> subclass_sizes(const CompatibilityPartition &p) {
    std::vector<std::size_t> sizes;
    for (const auto &sub : p.subclasses()) {
        sizes.push_back(sub.size());
    }
    return sizes;
}

} // namespace

TEST_CASE("compatibility predicate") {
    RngStream rng(1);
    const Predictor p = test::random_predictor(0, 4, 2, rng);
    CHECK(are_compatible(p, p)); // reflexive

    const Predictor comp{0, basis_measurement(2)};
    const Predictor had{1, hadamard_measurement()};
    CHECK_FALSE(are_compatible(comp, had));
    CHECK_FALSE(are_compatible(had, comp)); // symmetric

    // Diagonal measurements in the same basis always commute.
    const ProjectivePovm diag_a = labeled_basis_measurement(
        ComplexMatrix::Identity(4, 4), std::vector<std::size_t>{0, 1, 0, 1},
        {"0", "1"});
    const ProjectivePovm diag_b = labeled_basis_measurement(
        ComplexMatrix::Identity(4, 4), std::vector<std::size_t>{1, 1, 0, 0},
        {"0", "1"});
    CHECK(are_compatible(Predictor{0, diag_a}, Predictor{1, diag_b}));
}

TEST_CASE("all-compatible class collapses to one subclass") {
    RngStream rng(2);
    const ConceptClass c =
        random_class(4, 2, 6, ClassStructure::shared_basis, 1, rng);
    for (auto strategy :
         {PartitionStrategy::greedy, PartitionStrategy::exact}) {
        const auto p = partition_compatible(c, strategy);
        CHECK(p.m() == 1);
        CHECK(p.subclasses()[0].size() == 6);
    }
    CHECK(partition_compatible(c, PartitionStrategy::singleton).m() == 6);
}

TEST_CASE("pairwise-incompatible class stays singleton") {
    RngStream rng(3);
    const ConceptClass c =
        random_class(2, 2, 5, ClassStructure::haar_random, 1, rng);
    // Haar-random qubit bases are generically pairwise incompatible.
    const auto graph = compatibility_graph(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            REQUIRE_FALSE(graph[i][j]);
        }
    }
    CHECK(partition_compatible(c, PartitionStrategy::greedy).m() == 5);
    CHECK(partition_compatible(c, PartitionStrategy::exact).m() == 5);
}

TEST_CASE("exact recovers planted blocks") {
    RngStream rng(4);
    for (std::size_t m : {2, 3}) {
        const std::size_t k = 3 * m;
        const ConceptClass c =
            random_class(4, 2, k, ClassStructure::blocks, m, rng);
        const auto exact = partition_compatible(c, PartitionStrategy::exact);
        CHECK(exact.m() == m);
        // The planted groups are i mod m; the unique minimal cover must
        // match them as sets.
        for (const auto &sub : exact.subclasses()) {
            for (std::size_t pos : sub) {
                CHECK(pos % m == sub.front() % m);
            }
        }
        const auto greedy =
            partition_compatible(c, PartitionStrategy::greedy);
        CHECK(greedy.m() == m);
    }
}

TEST_CASE("greedy is never better than exact, never worse than singleton") {
    RngStream rng(5);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t k = 4 + static_cast<std::size_t>(rep) % 6;
        const ClassStructure structure =
            rep % 3 == 0 ? ClassStructure::shared_basis
                         : (rep % 3 == 1 ? ClassStructure::blocks
                                         : ClassStructure::haar_random);
        const ConceptClass c =
            random_class(4, 2, k, structure, 2, rng);
        const auto exact = partition_compatible(c, PartitionStrategy::exact);
        const auto greedy =
            partition_compatible(c, PartitionStrategy::greedy);
        CHECK(exact.m() <= greedy.m());
        CHECK(greedy.m() <= c.size());

        const double eps = 0.2;
        const double delta = 0.1;
        const std::size_t obj_exact =
            objective_of_partition(exact, eps, delta);
        const std::size_t obj_greedy =
            objective_of_partition(greedy, eps, delta);
        const std::size_t obj_singleton = objective_of_partition(
            partition_compatible(c, PartitionStrategy::singleton), eps,
            delta);
        CHECK(obj_exact <= obj_greedy);
        CHECK(obj_greedy <= obj_singleton);
    }
}

TEST_CASE("objective formula frozen values") {
    // ceil(200 ln 320) = 1154 for m=1, |C|=16, eps=0.2, delta=0.1.
    const std::size_t sizes16[] = {16};
    CHECK(objective_for_sizes(sizes16, 0.2, 0.1) == 1154);

    // Singleton partition of k predictors: k identical terms.
    const std::size_t singles[] = {1, 1, 1, 1};
    const std::size_t per =
        theorem_sample_term(4, 1, 0.2, 0.1);
    CHECK(objective_for_sizes(singles, 0.2, 0.1) == 4 * per);

    // Remark bound for a compatible class.
    CHECK(compatible_class_bound(16, 0.2, 0.1) ==
          static_cast<std::size_t>(
              std::ceil((2.0 / 0.04) * std::log(16.0 / 0.1))));

    CHECK_THROWS_AS(objective_for_sizes(sizes16, 0.0, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(objective_for_sizes(sizes16, 0.2, 1.0),
                    std::invalid_argument);
}

TEST_CASE("objective is monotone in epsilon and delta") {
    const std::size_t sizes[] = {3, 2, 1};
    std::size_t previous = 0;
    for (double eps : {0.5, 0.4, 0.3, 0.2, 0.1}) {
        const std::size_t obj = objective_for_sizes(sizes, eps, 0.1);
        CHECK(obj >= previous);
        previous = obj;
    }
    previous = 0;
    for (double delta : {0.5, 0.3, 0.1, 0.05, 0.01}) {
        const std::size_t obj = objective_for_sizes(sizes, 0.2, delta);
        CHECK(obj >= previous);
        previous = obj;
    }
}

TEST_CASE("exact strategy respects its size limit") {
    RngStream rng(6);
    const ConceptClass c =
        random_class(2, 2, 5, ClassStructure::haar_random, 1, rng);
    CHECK_THROWS_AS(
        partition_compatible(c, PartitionStrategy::exact, 4),
        std::invalid_argument);
}

TEST_CASE("partition validation rejects bad covers") {
    RngStream rng(7);
    const ConceptClass c =
        random_class(2, 2, 3, ClassStructure::haar_random, 1, rng);
    using Subs = std::vector<std::vector<std::size_t>>;
    CHECK_THROWS_AS(CompatibilityPartition(c, Subs{{0, 1, 2}}),
                    ValidationError); // incompatible members together
    CHECK_THROWS_AS(CompatibilityPartition(c, Subs{{0}, {1}}),
                    ValidationError); // missing 2
    CHECK_THROWS_AS(CompatibilityPartition(c, Subs{{0}, {0}, {1}, {2}}),
                    ValidationError); // duplicate
    CHECK_NOTHROW(CompatibilityPartition(c, Subs{{0}, {1}, {2}}));
}

TEST_CASE("greedy honors a custom order") {
    RngStream rng(8);
    const ConceptClass c =
        random_class(4, 2, 4, ClassStructure::blocks, 2, rng);
    const std::size_t order[] = {3, 2, 1, 0};
    const auto p = partition_compatible(c, PartitionStrategy::greedy,
                                        kExactPartitionLimit, order);
    CHECK(p.m() == 2);
    const std::size_t bad_order[] = {0, 0, 1, 2};
    CHECK_THROWS_AS(
        partition_compatible(c, PartitionStrategy::greedy,
                             kExactPartitionLimit, bad_order),
        std::invalid_argument);
}

TEST_CASE("balanced tie-break prefers even subclass sizes") {
    // Triangle {0,1,2} plus a pendant 3 attached only to 0: both
    // {{0,1,2},{3}} and {{0,3},{1,2}} are minimum covers, and the exact
    // search must return the balanced one. Predictor 3 lives in a basis
    // rotated inside predictor 0's eigenspaces, so it commutes with 0
    // and with nothing else.
    RngStream rng(9);
    const ComplexMatrix u = haar_random_unitary(4, rng);
    const double c = std::cos(0.63);
    const double s = std::sin(0.63);
    ComplexMatrix rot = ComplexMatrix::Zero(4, 4);
    rot(0, 0) = c;
    rot(0, 1) = -s;
    rot(1, 0) = s;
    rot(1, 1) = c;
    rot(2, 2) = c;
    rot(2, 3) = -s;
    rot(3, 2) = s;
    rot(3, 3) = c;

    const std::vector<std::string> labels{"0", "1"};
    std::vector<Predictor> predictors;
    predictors.push_back(Predictor{
        0, labeled_basis_measurement(
               u, std::vector<std::size_t>{0, 0, 1, 1}, labels)});
    predictors.push_back(Predictor{
        1, labeled_basis_measurement(
               u, std::vector<std::size_t>{0, 1, 0, 1}, labels)});
    predictors.push_back(Predictor{
        2, labeled_basis_measurement(
               u, std::vector<std::size_t>{0, 1, 1, 0}, labels)});
    predictors.push_back(Predictor{
        3, labeled_basis_measurement(
               ComplexMatrix(u * rot),
               std::vector<std::size_t>{0, 1, 0, 1}, labels)});
    const ConceptClass cls(predictors);

    const auto graph = compatibility_graph(cls);
    REQUIRE(graph[0][1]);
    REQUIRE(graph[0][2]);
    REQUIRE(graph[1][2]);
    REQUIRE(graph[0][3]);
    REQUIRE_FALSE(graph[1][3]);
    REQUIRE_FALSE(graph[2][3]);

    const auto greedy = partition_compatible(cls, PartitionStrategy::greedy);
    CHECK(subclass_sizes(greedy) == std::vector<std::size_t>{3, 1});

    const auto exact = partition_compatible(cls, PartitionStrategy::exact);
    CHECK(exact.m() == 2);
    CHECK(subclass_sizes(exact) == std::vector<std::size_t>{2, 2});
    CHECK(exact.subclasses()[0] == std::vector<std::size_t>{0, 3});
    CHECK(exact.subclasses()[1] == std::vector<std::size_t>{1, 2});
}
