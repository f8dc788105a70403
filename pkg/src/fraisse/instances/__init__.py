from .builtin import builtin_category, extension_axiom_check, projective_cover_check
from .graphs import Graph, GraphCategory, complete_graph, complete_sequence, empty_graph, free_amalgam, path_graph
from .orders import LinOrder, LinOrderCategory, omega_sequence, shuffle_amalgam
from .subcats import Subcategory, age_subcategory, complete_graphs, even_graphs, full_subcategory
from .surj import FinSet, SurjCategory, fiber_product
from .words import WordCategory
