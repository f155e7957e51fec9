"""Sampling pools for the synthetic corpus generator.

Shipped gazetteers (``data/*.txt``) are a deliberately incomplete subset of
these pools so that lexicon features are informative but not perfect.
"""

FIRST_NAMES = {
    "en": [
        "James", "John", "Robert", "Michael", "William", "David", "Richard", "Thomas", "Charles", "Daniel",
        "Matthew", "Andrew", "Mark", "Paul", "Steven", "Kevin", "Brian", "George", "Edward", "Oliver",
        "Mary", "Patricia", "Jennifer", "Linda", "Elizabeth", "Susan", "Jessica", "Sarah", "Karen", "Emily",
        "Emma", "Olivia", "Sophie", "Charlotte", "Amelia", "Grace", "Hannah", "Laura", "Rachel", "Megan",
    ],
    "de": [
        "Lukas", "Jonas", "Leon", "Felix", "Maximilian", "Paul", "Jürgen", "Klaus", "Stefan", "Matthias",
        "Andreas", "Wolfgang", "Dieter", "Uwe", "Tobias", "Florian", "Sebastian", "Jörg", "Günter", "Björn",
        "Anna", "Lena", "Sophie", "Marie", "Katharina", "Sabine", "Ursula", "Monika", "Petra", "Birgit",
        "Jana", "Franziska", "Sandra", "Nicole", "Heike", "Käthe", "Lea", "Hannah", "Julia", "Claudia",
    ],
    "es": [
        "José", "Antonio", "Manuel", "Francisco", "Juan", "David", "Javier", "Carlos", "Miguel", "Rafael",
        "Pedro", "Ángel", "Alejandro", "Fernando", "Pablo", "Sergio", "Jorge", "Alberto", "Luis", "Andrés",
        "María", "Carmen", "Ana", "Isabel", "Laura", "Lucía", "Marta", "Elena", "Pilar", "Rosa",
        "Cristina", "Paula", "Sara", "Raquel", "Beatriz", "Nuria", "Silvia", "Inés", "Sofía", "Teresa",
    ],
    "fr": [
        "Jean", "Pierre", "Michel", "André", "Philippe", "Louis", "Nicolas", "François", "Henri", "Julien",
        "Sébastien", "Olivier", "Christophe", "Thierry", "Laurent", "Éric", "Frédéric", "Mathieu", "Hugo", "Théo",
        "Marie", "Nathalie", "Isabelle", "Sylvie", "Catherine", "Françoise", "Valérie", "Céline", "Chloé", "Camille",
        "Léa", "Manon", "Juliette", "Aurélie", "Sandrine", "Élodie", "Margaux", "Hélène", "Brigitte", "Amélie",
    ],
}

LAST_NAMES = {
    "en": [
        "Smith", "Johnson", "Williams", "Brown", "Jones", "Miller", "Davis", "Wilson", "Anderson", "Taylor",
        "Thomas", "Moore", "Martin", "Jackson", "Thompson", "White", "Harris", "Clark", "Lewis", "Robinson",
        "Walker", "Young", "Allen", "King", "Wright", "Scott", "Green", "Baker", "Adams", "Nelson",
        "Hill", "Campbell", "Mitchell", "Roberts", "Carter", "Phillips", "Evans", "Turner", "Parker", "Collins",
        "Edwards", "Stewart", "Morris", "Murphy", "Cook", "Rogers", "O'Brien", "Kelly", "Walsh", "Byrne",
    ],
    "de": [
        "Müller", "Schmidt", "Schneider", "Fischer", "Weber", "Meyer", "Wagner", "Becker", "Schulz", "Hoffmann",
        "Schäfer", "Koch", "Bauer", "Richter", "Klein", "Wolf", "Schröder", "Neumann", "Schwarz", "Zimmermann",
        "Braun", "Krüger", "Hofmann", "Hartmann", "Lange", "Schmitt", "Werner", "Schmitz", "Krause", "Meier",
        "Lehmann", "Köhler", "Huber", "Maier", "Fuchs", "Peters", "Lang", "Scholz", "Möller", "Weiß",
    ],
    "es": [
        "García", "Rodríguez", "González", "Fernández", "López", "Martínez", "Sánchez", "Pérez", "Gómez", "Martín",
        "Jiménez", "Ruiz", "Hernández", "Díaz", "Moreno", "Muñoz", "Álvarez", "Romero", "Alonso", "Gutiérrez",
        "Navarro", "Torres", "Domínguez", "Vázquez", "Ramos", "Gil", "Ramírez", "Serrano", "Blanco", "Molina",
        "Morales", "Suárez", "Ortega", "Delgado", "Castro", "Ortiz", "Rubio", "Marín", "Sanz", "Núñez",
    ],
    "fr": [
        "Martin", "Bernard", "Dubois", "Thomas", "Robert", "Richard", "Petit", "Durand", "Leroy", "Moreau",
        "Simon", "Laurent", "Lefèvre", "Michel", "Garcia", "David", "Bertrand", "Roux", "Vincent", "Fournier",
        "Morel", "Girard", "André", "Lefebvre", "Mercier", "Dupont", "Lambert", "Bonnet", "François", "Martinez",
        "Legrand", "Garnier", "Faure", "Rousseau", "Blanc", "Guérin", "Muller", "Henry", "Roussel", "Nicolas",
    ],
}

# (city, ISO country) per language group
CITIES = {
    "en": [
        ("London", "GB"), ("Manchester", "GB"), ("Birmingham", "GB"), ("Leeds", "GB"), ("Glasgow", "GB"),
        ("Edinburgh", "GB"), ("Bristol", "GB"), ("Liverpool", "GB"), ("Cardiff", "GB"), ("Belfast", "GB"),
        ("Dublin", "IE"), ("Cork", "IE"), ("Galway", "IE"), ("Limerick", "IE"),
        ("New York", "US"), ("Chicago", "US"), ("Boston", "US"), ("San Francisco", "US"), ("Houston", "US"),
        ("Seattle", "US"), ("Denver", "US"), ("Atlanta", "US"), ("Miami", "US"), ("Los Angeles", "US"),
        ("Philadelphia", "US"), ("Dallas", "US"), ("Phoenix", "US"), ("Charlotte", "US"), ("Portland", "US"),
    ],
    "de": [
        ("Berlin", "DE"), ("Hamburg", "DE"), ("München", "DE"), ("Köln", "DE"), ("Frankfurt am Main", "DE"),
        ("Stuttgart", "DE"), ("Düsseldorf", "DE"), ("Leipzig", "DE"), ("Dortmund", "DE"), ("Essen", "DE"),
        ("Bremen", "DE"), ("Dresden", "DE"), ("Hannover", "DE"), ("Nürnberg", "DE"), ("Bonn", "DE"),
        ("Wien", "AT"), ("Graz", "AT"), ("Linz", "AT"), ("Salzburg", "AT"), ("Innsbruck", "AT"),
        ("Zürich", "CH"), ("Bern", "CH"), ("Basel", "CH"), ("St. Gallen", "CH"), ("Luzern", "CH"),
    ],
    "es": [
        ("Madrid", "ES"), ("Barcelona", "ES"), ("Valencia", "ES"), ("Sevilla", "ES"), ("Zaragoza", "ES"),
        ("Málaga", "ES"), ("Murcia", "ES"), ("Palma", "ES"), ("Bilbao", "ES"), ("Alicante", "ES"),
        ("Córdoba", "ES"), ("Valladolid", "ES"), ("Vigo", "ES"), ("Gijón", "ES"), ("Granada", "ES"),
        ("A Coruña", "ES"), ("Vitoria", "ES"), ("Santander", "ES"), ("Pamplona", "ES"), ("San Sebastián", "ES"),
    ],
    "fr": [
        ("Paris", "FR"), ("Marseille", "FR"), ("Lyon", "FR"), ("Toulouse", "FR"), ("Nice", "FR"),
        ("Nantes", "FR"), ("Strasbourg", "FR"), ("Montpellier", "FR"), ("Bordeaux", "FR"), ("Lille", "FR"),
        ("Rennes", "FR"), ("Reims", "FR"), ("Grenoble", "FR"), ("Dijon", "FR"), ("Angers", "FR"),
        ("Bruxelles", "BE"), ("Liège", "BE"), ("Namur", "BE"), ("Charleroi", "BE"), ("Mons", "BE"),
    ],
}

COUNTRY_NAMES = {
    "GB": {"en": "United Kingdom", "de": "Vereinigtes Königreich", "es": "Reino Unido", "fr": "Royaume-Uni"},
    "IE": {"en": "Ireland", "de": "Irland", "es": "Irlanda", "fr": "Irlande"},
    "US": {"en": "United States", "de": "Vereinigte Staaten", "es": "Estados Unidos", "fr": "États-Unis"},
    "DE": {"en": "Germany", "de": "Deutschland", "es": "Alemania", "fr": "Allemagne"},
    "AT": {"en": "Austria", "de": "Österreich", "es": "Austria", "fr": "Autriche"},
    "CH": {"en": "Switzerland", "de": "Schweiz", "es": "Suiza", "fr": "Suisse"},
    "ES": {"en": "Spain", "de": "Spanien", "es": "España", "fr": "Espagne"},
    "FR": {"en": "France", "de": "Frankreich", "es": "Francia", "fr": "France"},
    "BE": {"en": "Belgium", "de": "Belgien", "es": "Bélgica", "fr": "Belgique"},
    "NL": {"en": "Netherlands", "de": "Niederlande", "es": "Países Bajos", "fr": "Pays-Bas"},
    "IT": {"en": "Italy", "de": "Italien", "es": "Italia", "fr": "Italie"},
}

STREETS = {
    "en": ["High Street", "Station Road", "Church Lane", "Main Street", "Park Avenue", "Victoria Road",
           "Green Lane", "Mill Road", "King Street", "Queens Road", "Oak Avenue", "Elm Street",
           "Broadway", "Market Street", "Bridge Street", "Harbour Road"],
    "de": ["Hauptstraße", "Bahnhofstraße", "Gartenstraße", "Schulstraße", "Dorfstraße", "Lindenstraße",
           "Bergstraße", "Kirchweg", "Goethestraße", "Schillerplatz", "Marktplatz", "Rosenweg"],
    "es": ["Calle Mayor", "Calle Real", "Avenida de la Constitución", "Plaza de España", "Calle del Sol",
           "Paseo de Gracia", "Gran Vía", "Calle Nueva", "Avenida del Puerto", "Calle de Alcalá"],
    "fr": ["Rue de la Paix", "Avenue Victor Hugo", "Boulevard Saint-Michel", "Rue du Moulin", "Place de la Gare",
           "Rue de l'Église", "Avenue Jean Jaurès", "Rue Pasteur", "Chemin des Vignes", "Rue Nationale"],
}

# (bank name, BIC institution code, ISO country)
BANKS = [
    ("Barclays Bank", "BARC", "GB"), ("HSBC Bank", "HBUK", "GB"), ("Lloyds Bank", "LOYD", "GB"),
    ("NatWest", "NWBK", "GB"), ("Santander UK", "ABBY", "GB"), ("Metro Bank", "MYMB", "GB"),
    ("Bank of Ireland", "BOFI", "IE"), ("Allied Irish Banks", "AIBK", "IE"),
    ("JPMorgan Chase Bank", "CHAS", "US"), ("Bank of America", "BOFA", "US"), ("Citibank", "CITI", "US"),
    ("Wells Fargo Bank", "WFBI", "US"), ("US Bank", "USBK", "US"),
    ("Deutsche Bank", "DEUT", "DE"), ("Commerzbank", "COBA", "DE"), ("DZ Bank", "GENO", "DE"),
    ("Postbank", "PBNK", "DE"), ("Hypovereinsbank", "HYVE", "DE"), ("ING-DiBa", "INGD", "DE"),
    ("Erste Bank", "GIBA", "AT"), ("Raiffeisen Bank International", "RZBA", "AT"),
    ("UBS Switzerland", "UBSW", "CH"), ("Credit Suisse", "CRES", "CH"), ("Zürcher Kantonalbank", "ZKBK", "CH"),
    ("Banco Santander", "BSCH", "ES"), ("BBVA", "BBVA", "ES"), ("CaixaBank", "CAIX", "ES"),
    ("Banco Sabadell", "BSAB", "ES"), ("Bankinter", "BKBK", "ES"),
    ("BNP Paribas", "BNPA", "FR"), ("Société Générale", "SOGE", "FR"), ("Crédit Agricole", "AGRI", "FR"),
    ("Crédit Mutuel", "CMCI", "FR"), ("La Banque Postale", "PSST", "FR"),
    ("KBC Bank", "KRED", "BE"), ("Belfius Bank", "GKCC", "BE"),
    ("ING Bank", "INGB", "NL"), ("Rabobank", "RABO", "NL"), ("ABN AMRO Bank", "ABNA", "NL"),
    ("UniCredit", "UNCR", "IT"), ("Intesa Sanpaolo", "BCIT", "IT"),
]

# Bank names that embed a location; used for nested entities.
NESTED_BANK_TEMPLATES = {
    "en": ["Bank of {city}", "{city} Savings Bank", "First National Bank of {city}", "{city} Building Society"],
    "de": ["Sparkasse {city}", "Volksbank {city}", "Stadtsparkasse {city}", "Raiffeisenbank {city}"],
    "es": ["Caja Rural de {city}", "Banco de {city}", "Caja de Ahorros de {city}"],
    "fr": ["Crédit Municipal de {city}", "Banque Populaire de {city}", "Caisse d'Épargne {city}"],
}

COMPANY_WORDS = [
    "Acme", "Globex", "Initech", "Umbrella", "Stark", "Wayne", "Vertex", "Apex", "Nimbus", "Orion",
    "Pioneer", "Summit", "Horizon", "Atlas", "Zenith", "Quantum", "Falcon", "Cobalt", "Sterling", "Crescent",
    "Meridian", "Northwind", "Bluewave", "Evergreen", "Redstone", "Silverline", "Ironbridge", "Clearwater",
    "Brightpath", "Keystone", "Lighthouse", "Riverside", "Oakwood", "Maple", "Harbor", "Alpine", "Delta",
    "Nordic", "Polar", "Solaris",
]
COMPANY_SECTORS = {
    "en": ["Trading", "Logistics", "Consulting", "Software", "Holdings", "Industries", "Foods", "Systems",
           "Engineering", "Services", "Media", "Energy", "Pharma", "Textiles", "Motors"],
    "de": ["Handel", "Logistik", "Beratung", "Software", "Holding", "Maschinenbau", "Lebensmittel", "Systeme",
           "Technik", "Dienstleistungen", "Energie", "Bau", "Möbel"],
    "es": ["Comercial", "Logística", "Consultores", "Software", "Inversiones", "Industrias", "Alimentación",
           "Sistemas", "Ingeniería", "Servicios", "Energía", "Construcciones"],
    "fr": ["Commerce", "Logistique", "Conseil", "Logiciels", "Holding", "Industries", "Alimentation",
           "Systèmes", "Ingénierie", "Services", "Énergie", "Transports"],
}
COMPANY_SUFFIXES = {
    "en": ["Ltd", "Limited", "PLC", "Inc", "LLC", "Corp", "Co"],
    "de": ["GmbH", "AG", "KG", "UG", "e.K."],
    "es": ["S.L.", "S.A.", "SL", "SA", "S.L.U."],
    "fr": ["SARL", "SAS", "SA", "EURL", "SNC"],
}

# Remittance phrases; "{n}" is a reference number, "{month}" a month name, "{year}" a year.
PURPOSES = {
    "en": [
        "Invoice {n}", "INV {n}", "Payment for invoice {n}", "Rent {month} {year}", "Salary {month} {year}",
        "Consulting services {month}", "Order {n}", "Purchase order {n}", "Membership fee {year}",
        "Loan repayment {n}", "Tuition fees {year}", "Insurance premium {n}", "Refund order {n}",
        "Service charges {month}", "Dividend payment {year}", "Software license {n}", "Utility bill {month}",
        "Freight charges {n}", "Commission {month} {year}", "Deposit for contract {n}",
    ],
    "de": [
        "Rechnung {n}", "Rechnung Nr. {n}", "Miete {month} {year}", "Gehalt {month} {year}",
        "Beratungsleistungen {month}", "Bestellung {n}", "Mitgliedsbeitrag {year}", "Darlehensrate {n}",
        "Versicherungsbeitrag {n}", "Rückerstattung {n}", "Nebenkosten {month}", "Kaution Vertrag {n}",
    ],
    "es": [
        "Factura {n}", "Factura n.º {n}", "Alquiler {month} {year}", "Nómina {month} {year}",
        "Servicios de consultoría {month}", "Pedido {n}", "Cuota de socio {year}", "Préstamo cuota {n}",
        "Seguro póliza {n}", "Devolución pedido {n}", "Gastos de comunidad {month}",
    ],
    "fr": [
        "Facture {n}", "Facture n° {n}", "Loyer {month} {year}", "Salaire {month} {year}",
        "Prestations de conseil {month}", "Commande {n}", "Cotisation {year}", "Échéance prêt {n}",
        "Prime d'assurance {n}", "Remboursement commande {n}", "Charges {month}",
    ],
}
MONTHS = {
    "en": ["January", "February", "March", "April", "May", "June", "July", "August", "September", "October",
           "November", "December"],
    "de": ["Januar", "Februar", "März", "April", "Mai", "Juni", "Juli", "August", "September", "Oktober",
           "November", "Dezember"],
    "es": ["enero", "febrero", "marzo", "abril", "mayo", "junio", "julio", "agosto", "septiembre", "octubre",
           "noviembre", "diciembre"],
    "fr": ["janvier", "février", "mars", "avril", "mai", "juin", "juillet", "août", "septembre", "octobre",
           "novembre", "décembre"],
}

# Field captions for the key/value style formats.
CAPTIONS = {
    "en": {"debtor": "Debtor", "creditor": "Creditor", "iban": "IBAN", "bank": "Bank", "address": "Address",
           "amount": "Amount", "purpose": "Remittance Information", "ultimate": "Ultimate Creditor",
           "intermediary": "Intermediary Bank", "charges": "Charges", "reference": "End-to-End Reference",
           "date": "Execution Date", "title": "SEPA Credit Transfer", "note": "Note"},
    "de": {"debtor": "Auftraggeber", "creditor": "Empfänger", "iban": "IBAN", "bank": "Kreditinstitut",
           "address": "Anschrift", "amount": "Betrag", "purpose": "Verwendungszweck",
           "ultimate": "Endbegünstigter", "intermediary": "Zwischenbank", "charges": "Gebühren",
           "reference": "Referenz", "date": "Ausführungsdatum", "title": "SEPA-Überweisung", "note": "Hinweis"},
    "es": {"debtor": "Ordenante", "creditor": "Beneficiario", "iban": "IBAN", "bank": "Entidad",
           "address": "Dirección", "amount": "Importe", "purpose": "Concepto", "ultimate": "Beneficiario final",
           "intermediary": "Banco intermediario", "charges": "Comisiones", "reference": "Referencia",
           "date": "Fecha de ejecución", "title": "Transferencia SEPA", "note": "Nota"},
    "fr": {"debtor": "Donneur d'ordre", "creditor": "Bénéficiaire", "iban": "IBAN", "bank": "Banque",
           "address": "Adresse", "amount": "Montant", "purpose": "Motif", "ultimate": "Bénéficiaire final",
           "intermediary": "Banque intermédiaire", "charges": "Frais", "reference": "Référence",
           "date": "Date d'exécution", "title": "Virement SEPA", "note": "Remarque"},
}

# Abbreviations used by non-standard messages.
ABBREVIATIONS = {
    "Debtor": "DBTR", "Creditor": "CRDTR", "Beneficiary": "BNFCRY", "Remittance Information": "RMT INF",
    "Amount": "AMT", "Address": "ADDR", "Bank": "BK", "Intermediary Bank": "INTRMY BK", "Charges": "CHGS",
    "Ultimate Creditor": "ULT CDTR", "End-to-End Reference": "E2E REF", "Note": "MSG",
}

# Entity-free lines appended to reach the sampled message length.
FILLER = {
    "MT103": [
        "/INS/CHASUS33", "/ACC/INSTRUCTION FOLLOWS", "/BNF/PLEASE ADVISE BY PHONE", "/REC/CREDIT UPON RECEIPT",
        "//RETURN IF UNAPPLIED", "/PHONBEN/", "/TELEBEN/", "/CODTYPTR/001", "/INTA/URGENT PROCESSING",
        "/BENONLY/", "/CHQB/", "/HOLD/",
    ],
    "SEPA": [
        "Category Purpose: SUPP", "Charge Bearer: SLEV", "Service Level: SEPA", "Local Instrument: INST",
        "Batch Booking: false", "Priority: NORM", "Channel: ONLINE BANKING", "Status: ACCEPTED",
    ],
    "ACH": [
        "SEC:CCD", "SEC:PPD", "ADDENDA:0", "ORIG ID:{d10}", "TRACE#:{d15}", "BATCH:{d7}", "SVC CLASS:220",
        "EFF DATE:{yymmdd}", "STATUS:SETTLED",
    ],
    "OTHER": [
        "Thank you for your business.", "Please process at your earliest convenience.",
        "This instruction was submitted electronically.", "Reference the transaction number in all correspondence.",
        "Queries should be directed to the payments desk.", "Value date as agreed.",
    ],
}

PAIN_FILLER_ELEMENTS = [
    ("InstrPrty", "NORM"), ("ChrgBr", "SLEV"), ("BtchBookg", "false"), ("CtgyPurp", "SUPP"),
    ("LclInstrm", "INST"), ("SvcLvl", "SEPA"),
]
