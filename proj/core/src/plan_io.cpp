#include "psc/plan_io.hpp"

#include <nlohmann/json.hpp>
#include <ostream>

namespace psc {

namespace {

using json = nlohmann::ordered_json;

const char* form_name(AccessDesc::Form f) {
    switch (f) {
        case AccessDesc::Form::Strided: return "strided";
        case AccessDesc::Form::InnerTable: return "inner_table";
        case AccessDesc::Form::OuterTable: return "outer_table";
        default: return "point_table";
    }
}

json desc_json(const AccessDesc& d) {
    json j;
    j["form"] = form_name(d.form);
    if (d.is_table()) {
        j["table"] = d.table;
    } else {
        j["base"] = d.lin.base;
        j["stride_outer"] = d.lin.stride_outer;
        j["stride_inner"] = d.lin.stride_inner;
    }
    return j;
}

json codelet_json(const Codelet& c) {
    CostModelResult cost = codelet_cost(c);
    json j;
    j["kind"] = codelet_kind_name(c.kind);
    j["m"] = c.outer_extent;
    j["n"] = c.inner_extent;
    j["out"] = desc_json(c.out);
    j["mat"] = desc_json(c.mat);
    j["vec"] = desc_json(c.vec);
    j["cost"] = {{"ops", cost.ops},
                 {"fns", cost.fns},
                 {"descriptors", cost.descriptors},
                 {"total", cost.total}};
    return j;
}

}  // namespace

std::string plan_to_json(const CodeletPlan& plan, int indent) {
    json j;
    j["kernel"] = kernel_name(plan.kernel);
    j["n_rows"] = plan.n_rows;
    j["n_cols"] = plan.n_cols;
    j["nnz"] = plan.nnz;
    j["window"] = plan.window;
    j["target_groups"] = plan.target_groups;
    j["total_cost"] = plan.total_cost();
    j["total_ops"] = plan.total_ops();
    j["partitions"] = json::array();
    for (const PartitionPlan& part : plan.partitions) {
        json groups = json::array();
        for (const RegionGroup& g : part.groups) {
            json gj;
            gj["row_begin"] = g.window.row_begin;
            gj["row_end"] = g.window.row_end;
            gj["strategy"] = strategy_name(g.strategy);
            gj["cost"] = g.cost;
            gj["codelets"] = json::array();
            for (const Codelet& c : g.codelets) gj["codelets"].push_back(codelet_json(c));
            gj["finalize"] = json::array();
            for (const FinalizeRecord& f : g.finalize) {
                gj["finalize"].push_back(
                    {{"row", f.row}, {"diag_pos", f.diag_pos}, {"rhs_index", f.rhs_index}});
            }
            groups.push_back(std::move(gj));
        }
        j["partitions"].push_back({{"groups", std::move(groups)}});
    }
    return j.dump(indent);
}

void write_plan_json(std::ostream& os, const CodeletPlan& plan, int indent) {
    os << plan_to_json(plan, indent) << "\n";
}

}  // namespace psc
