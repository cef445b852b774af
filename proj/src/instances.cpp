#include "waring/instances.hpp"

namespace waring {

const std::vector<TableRow>& table_rows() {
    static const std::vector<TableRow> rows = {
        {1, "123"},          {1, "1234"},         {1, "12|34:13"},       {1, "12345"},
        {1, "12|345:13"},    {1, "123|45:24"},    {1, "145|23:24"},      {1, "125|34:13"},
        {2, "123456"},       {2, "12|3456:13"},   {2, "123|456:14"},     {2, "1456|23:24"},
        {2, "123|456:24"},   {2, "124|356:13"},   {2, "14|23|56:15|25"}, {2, "1256|34:13"},
        {2, "12|34|56:13|35"}, {3, "134|256:35"}, {3, "156|234:35"},     {3, "1234|56:35"},
        {3, "12|36|45:13|14"}, {3, "145|236:24"}, {3, "1236|45:24"},     {3, "126|345:13"},
        {3, "1256|34:13"},   {3, "1256|34:13|35"},
    };
    return rows;
}

UTMatrix obstruction_7x7(const Field& field) {
    UTMatrix m(field, 7);
    for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 6}, {3, 4}, {4, 5}, {4, 6}, {6, 7}})
        m.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), field.one());
    return m;
}

}  // namespace waring
